#include "hawkes/io.hpp"

#include <bit>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hawkes/errors.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/parallel.hpp"

namespace hawkes::io {

using nlohmann::json;

// --- event stream persistence -----------------------------------------------

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char* p) { return std::bit_cast<double>(get_u64(p)); }

constexpr char kBinaryMagic[9] = "HWKLDP01";

}  // namespace

void write_events_csv(const EventStream& stream, std::ostream& out) {
    out << "time\n";
    for (double tau : stream.history()) out << format_double(tau) << "\n";
    for (double tau : stream.times()) out << format_double(tau) << "\n";
}

void write_events_csv_file(const EventStream& stream, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_events_csv(stream, out);
}

EventStream read_events_csv(std::istream& in, double horizon) {
    std::string line;
    if (!std::getline(in, line) || line != "time") {
        throw std::runtime_error("event csv: missing `time` header row");
    }
    std::vector<double> history;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(line, &pos);
        if (v <= 0.0) {
            history.push_back(v);
        } else {
            times.push_back(v);
        }
    }
    return EventStream(horizon, std::move(times), std::move(history));
}

EventStream read_events_csv_file(const std::string& path, double horizon) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_events_csv(in, horizon);
}

void write_events_binary_file(const EventStream& stream, const std::string& path) {
    std::string buf;
    buf.append(kBinaryMagic, 8);
    put_f64(buf, stream.horizon());
    put_u64(buf, stream.history().size());
    put_u64(buf, stream.times().size());
    for (double tau : stream.history()) put_f64(buf, tau);
    for (double tau : stream.times()) put_f64(buf, tau);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

EventStream read_events_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 32 || buf.compare(0, 8, kBinaryMagic, 8) != 0) {
        throw std::runtime_error("event binary: bad magic in " + path);
    }
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
    const double horizon = get_f64(p + 8);
    const std::uint64_t n_hist = get_u64(p + 16);
    const std::uint64_t n_times = get_u64(p + 24);
    if (buf.size() != 32 + 8 * (n_hist + n_times)) {
        throw std::runtime_error("event binary: truncated file " + path);
    }
    std::vector<double> history(n_hist);
    std::vector<double> times(n_times);
    for (std::uint64_t i = 0; i < n_hist; ++i) history[i] = get_f64(p + 32 + 8 * i);
    for (std::uint64_t i = 0; i < n_times; ++i) {
        times[i] = get_f64(p + 32 + 8 * (n_hist + i));
    }
    return EventStream(horizon, std::move(times), std::move(history));
}

// --- configuration parsing ----------------------------------------------------

namespace {

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
    }
}

double require_number(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key)) {
        throw ConfigError(std::string(where) + ": missing required field \"" + key + "\"");
    }
    if (!obj.at(key).is_number()) {
        throw ConfigError(std::string(where) + ": field \"" + key + "\" must be a number");
    }
    return obj.at(key).get<double>();
}

double number_or(const json& obj, const char* where, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) {
        throw ConfigError(std::string(where) + ": field \"" + key + "\" must be a number");
    }
    return obj.at(key).get<double>();
}

Kernel parse_kernel(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": must be an object");
    const std::string shape = j.value("shape", "");
    try {
        if (shape == "exponential") {
            reject_unknown_keys(j, where.c_str(), {"shape", "amplitude", "decay"});
            return exponential_kernel(require_number(j, where.c_str(), "amplitude"),
                                      require_number(j, where.c_str(), "decay"));
        }
        if (shape == "powerlaw") {
            reject_unknown_keys(j, where.c_str(), {"shape", "amplitude", "offset", "exponent"});
            return power_law_kernel(require_number(j, where.c_str(), "amplitude"),
                                    require_number(j, where.c_str(), "offset"),
                                    require_number(j, where.c_str(), "exponent"));
        }
        if (shape == "table") {
            reject_unknown_keys(j, where.c_str(), {"shape", "interpolation", "knots"});
            const std::string interp = j.value("interpolation", "step");
            if (interp != "step" && interp != "linear") {
                throw ConfigError(where + ": interpolation must be \"step\" or \"linear\"");
            }
            if (!j.contains("knots") || !j.at("knots").is_array()) {
                throw ConfigError(where + ": missing knots array");
            }
            std::vector<TableKnot> knots;
            for (const auto& kn : j.at("knots")) {
                if (!kn.is_array() || kn.size() != 2 || !kn[0].is_number() ||
                    !kn[1].is_number()) {
                    throw ConfigError(where + ": knots must be [t, value] pairs");
                }
                knots.push_back({kn[0].get<double>(), kn[1].get<double>()});
            }
            return table_kernel(interp == "step" ? TableInterp::Step : TableInterp::Linear,
                                std::move(knots));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ": shape must be one of exponential, powerlaw, table");
}

RateFn parse_rate(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": must be an object");
    const std::string shape = j.value("shape", "");
    try {
        if (shape == "linear") {
            reject_unknown_keys(j, where.c_str(), {"shape", "nu", "slope"});
            return linear_rate(require_number(j, where.c_str(), "nu"),
                               number_or(j, where.c_str(), "slope", 0.0));
        }
        if (shape == "saturating") {
            reject_unknown_keys(j, where.c_str(), {"shape", "nu", "cap", "scale"});
            return saturating_rate(require_number(j, where.c_str(), "nu"),
                                   require_number(j, where.c_str(), "cap"),
                                   require_number(j, where.c_str(), "scale"));
        }
        if (shape == "clipped_linear") {
            reject_unknown_keys(j, where.c_str(), {"shape", "nu", "cap"});
            return clipped_linear_rate(require_number(j, where.c_str(), "nu"),
                                       require_number(j, where.c_str(), "cap"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ": shape must be one of linear, saturating, clipped_linear");
}

IntensityModel parse_model(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": must be an object");
    reject_unknown_keys(j, where.c_str(), {"kernel", "rate", "label"});
    if (!j.contains("kernel")) throw ConfigError(where + ": missing \"kernel\"");
    if (!j.contains("rate")) throw ConfigError(where + ": missing \"rate\"");
    Kernel kernel = parse_kernel(j.at("kernel"), where + ".kernel");
    RateFn rate = parse_rate(j.at("rate"), where + ".rate");
    const std::string label = j.value("label", "model");
    try {
        return IntensityModel(std::move(kernel), std::move(rate), label);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

json kernel_to_json(const Kernel& k) {
    json j;
    if (const auto* e = std::get_if<ExponentialKernel>(&k.shape())) {
        j = {{"shape", "exponential"}, {"amplitude", e->amplitude}, {"decay", e->decay}};
    } else if (const auto* p = std::get_if<PowerLawKernel>(&k.shape())) {
        j = {{"shape", "powerlaw"},
             {"amplitude", p->amplitude},
             {"offset", p->offset},
             {"exponent", p->exponent}};
    } else {
        const auto& t = std::get<TableKernel>(k.shape());
        json knots = json::array();
        for (const auto& kn : t.knots) knots.push_back({kn.t, kn.value});
        j = {{"shape", "table"},
             {"interpolation", t.interp == TableInterp::Step ? "step" : "linear"},
             {"knots", knots}};
    }
    return j;
}

json rate_to_json(const RateFn& r) {
    json j;
    if (const auto* lin = std::get_if<LinearRate>(&r.shape())) {
        j = {{"shape", "linear"}, {"nu", lin->nu}, {"slope", lin->slope}};
    } else if (const auto* sat = std::get_if<SaturatingRate>(&r.shape())) {
        j = {{"shape", "saturating"}, {"nu", sat->nu}, {"cap", sat->cap}, {"scale", sat->scale}};
    } else {
        const auto& cl = std::get<ClippedLinearRate>(r.shape());
        j = {{"shape", "clipped_linear"}, {"nu", cl.nu}, {"cap", cl.cap}};
    }
    return j;
}

json model_to_json(const IntensityModel& m) {
    return {{"kernel", kernel_to_json(m.kernel())},
            {"rate", rate_to_json(m.rate())},
            {"label", m.label()}};
}

const char* tail_name(Tail t) { return t == Tail::Upper ? "upper" : "lower"; }

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(j, "config", {"model", "sim", "task", "output"});

    RunConfig cfg;
    if (!j.contains("model")) throw ConfigError("config: missing \"model\"");
    cfg.model = parse_model(j.at("model"), "model");

    const json sim = j.value("sim", json::object());
    reject_unknown_keys(sim, "sim", {"seed", "horizon", "burn_in", "replicas", "max_events"});
    cfg.sim.seed = static_cast<std::uint64_t>(number_or(sim, "sim", "seed", 0.0));
    cfg.sim.horizon = number_or(sim, "sim", "horizon", 1.0);
    cfg.sim.burn_in = number_or(sim, "sim", "burn_in", 0.0);
    cfg.sim.replicas = static_cast<int>(number_or(sim, "sim", "replicas", 1.0));
    cfg.sim.max_events =
        static_cast<std::uint64_t>(number_or(sim, "sim", "max_events", 10'000'000.0));
    if (!(cfg.sim.horizon > 0.0)) throw ConfigError("sim: horizon must be > 0");
    if (cfg.sim.burn_in < 0.0) throw ConfigError("sim: burn_in must be >= 0");
    if (cfg.sim.replicas < 1) throw ConfigError("sim: replicas must be >= 1");

    if (!j.contains("task")) throw ConfigError("config: missing \"task\"");
    const json& task = j.at("task");
    if (!task.is_object()) throw ConfigError("task: must be an object");
    reject_unknown_keys(task, "task",
                        {"name", "alternative", "threshold", "tail", "proposal", "horizons",
                         "grid", "window", "binary"});
    cfg.task.name = task.value("name", "");

    const std::string& name = cfg.task.name;
    const bool known = name == "simulate" || name == "loglik" || name == "entropy" ||
                       name == "rate-fn" || name == "rare-event" || name == "empirical" ||
                       name == "lln";
    if (!known) {
        throw ConfigError("task: name must be one of simulate, loglik, entropy, rate-fn, "
                          "rare-event, empirical, lln");
    }

    if (task.contains("alternative")) {
        cfg.task.alternative = parse_model(task.at("alternative"), "task.alternative");
    }
    if ((name == "loglik" || name == "entropy") && !cfg.task.alternative) {
        throw ConfigError("task: missing required field \"alternative\" for " + name);
    }

    if (name == "rare-event") {
        if (!task.contains("threshold")) {
            throw ConfigError("task: missing required field \"threshold\" for rare-event");
        }
        cfg.task.threshold = require_number(task, "task", "threshold");
        const std::string tail = task.value("tail", "upper");
        if (tail == "upper") {
            cfg.task.tail = Tail::Upper;
        } else if (tail == "lower") {
            cfg.task.tail = Tail::Lower;
        } else {
            throw ConfigError("task: tail must be \"upper\" or \"lower\"");
        }
        if (task.contains("proposal")) {
            cfg.task.proposal = parse_model(task.at("proposal"), "task.proposal");
        }
        if (task.contains("horizons")) {
            if (!task.at("horizons").is_array()) {
                throw ConfigError("task: horizons must be an array of numbers");
            }
            for (const auto& h : task.at("horizons")) {
                if (!h.is_number() || !(h.get<double>() > 0.0)) {
                    throw ConfigError("task: horizons must be positive numbers");
                }
                cfg.task.horizons.push_back(h.get<double>());
            }
        }
    }

    if (name == "rate-fn") {
        if (!task.contains("grid")) {
            throw ConfigError("task: missing required field \"grid\" for rate-fn");
        }
        const json& grid = task.at("grid");
        reject_unknown_keys(grid, "task.grid", {"from", "to", "step"});
        GridSpec g;
        g.from = require_number(grid, "task.grid", "from");
        g.to = require_number(grid, "task.grid", "to");
        g.step = require_number(grid, "task.grid", "step");
        if (!(g.step > 0.0) || g.to < g.from) {
            throw ConfigError("task.grid: requires step > 0 and to >= from");
        }
        cfg.task.grid = g;
    }

    if (name == "empirical") {
        if (!task.contains("window")) {
            throw ConfigError("task: missing required field \"window\" for empirical");
        }
        const json& window = task.at("window");
        reject_unknown_keys(window, "task.window", {"length", "functional", "m"});
        WindowSpec w;
        w.length = require_number(window, "task.window", "length");
        w.functional = window.value("functional", "count");
        w.m = static_cast<int>(number_or(window, "task.window", "m", 1.0));
        if (w.functional != "count" && w.functional != "indicator" &&
            w.functional != "truncated_count" && w.functional != "max_gap") {
            throw ConfigError("task.window: functional must be one of count, indicator, "
                              "truncated_count, max_gap");
        }
        if (!(w.length > 0.0)) throw ConfigError("task.window: length must be > 0");
        if (w.length > cfg.sim.horizon) {
            throw ConfigError("task.window: length must not exceed sim horizon");
        }
        cfg.task.window = w;
    }

    if (task.contains("binary")) {
        if (!task.at("binary").is_boolean()) throw ConfigError("task: binary must be a bool");
        cfg.task.write_binary = task.at("binary").get<bool>();
    }

    if (j.contains("output")) {
        const json& output = j.at("output");
        reject_unknown_keys(output, "output", {"dir"});
        if (output.contains("dir")) cfg.out_dir = output.at("dir").get<std::string>();
    }

    // Canonical echo with defaults materialized.
    json resolved;
    resolved["model"] = model_to_json(*cfg.model);
    resolved["sim"] = {{"seed", cfg.sim.seed},
                       {"horizon", cfg.sim.horizon},
                       {"burn_in", cfg.sim.burn_in},
                       {"replicas", cfg.sim.replicas},
                       {"max_events", cfg.sim.max_events}};
    json rtask;
    rtask["name"] = cfg.task.name;
    if (cfg.task.alternative) rtask["alternative"] = model_to_json(*cfg.task.alternative);
    if (cfg.task.threshold) rtask["threshold"] = *cfg.task.threshold;
    if (name == "rare-event") {
        rtask["tail"] = tail_name(cfg.task.tail);
        if (cfg.task.proposal) rtask["proposal"] = model_to_json(*cfg.task.proposal);
        if (!cfg.task.horizons.empty()) rtask["horizons"] = cfg.task.horizons;
    }
    if (cfg.task.grid) {
        rtask["grid"] = {{"from", cfg.task.grid->from},
                         {"to", cfg.task.grid->to},
                         {"step", cfg.task.grid->step}};
    }
    if (cfg.task.window) {
        rtask["window"] = {{"length", cfg.task.window->length},
                           {"functional", cfg.task.window->functional},
                           {"m", cfg.task.window->m}};
    }
    if (cfg.task.write_binary) rtask["binary"] = true;
    resolved["task"] = rtask;
    if (cfg.out_dir) resolved["output"] = {{"dir", *cfg.out_dir}};
    cfg.resolved = resolved;
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_hash_hex(const RunConfig& cfg) {
    json semantic = {{"model", cfg.resolved.at("model")},
                     {"sim", cfg.resolved.at("sim")},
                     {"task", cfg.resolved.at("task")}};
    const std::string dump = semantic.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

// --- task execution ------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

WindowFunctional build_functional(const WindowSpec& w) {
    if (w.functional == "count") return window_count(w.length);
    if (w.functional == "indicator") return window_indicator_at_least(w.length, w.m);
    if (w.functional == "truncated_count") return window_truncated_count(w.length, w.m);
    return window_max_gap(w.length);
}

// Replica-parallel path generation into index-addressed slots; collection
// order stays deterministic regardless of scheduling.
std::vector<EventStream> simulate_replicas(const IntensityModel& model,
                                           const SimConfig& sim) {
    std::vector<std::optional<EventStream>> slots(static_cast<std::size_t>(sim.replicas));
    parallel_replicas(slots.size(), [&](std::size_t r) {
        slots[r] = sim.burn_in > 0.0 ? burn_in_replica(model, sim, r)
                                     : simulate_replica(model, sim, r);
    });
    std::vector<EventStream> paths;
    paths.reserve(slots.size());
    for (auto& s : slots) paths.push_back(std::move(*s));
    return paths;
}

json rare_event_to_json(const RareEventEstimate& est) {
    json out = {{"threshold", est.threshold}, {"horizon", est.horizon},
                {"tail", tail_name(est.tail)},  {"p_hat", est.p_hat},
                {"std_err", est.std_err},       {"ess", est.ess},
                {"replicas", est.replicas},     {"reliable", est.reliable},
                {"proposal", est.proposal_label}};
    out["rate_hat"] = std::isfinite(est.rate_hat) ? json(est.rate_hat) : json();
    out["rate_std_err"] =
        std::isfinite(est.rate_std_err) ? json(est.rate_std_err) : json();
    if (est.explicit_rate) out["i_explicit"] = *est.explicit_rate;
    if (est.relative_gap) out["relative_gap"] = *est.relative_gap;
    return out;
}

}  // namespace

json ResultRecord::to_json() const {
    json j;
    j["task"] = task;
    j["config"] = config_hash;
    j["seed"] = seed;
    if (replica) {
        j["replica"] = *replica;
    } else {
        j["replica"] = nullptr;
    }
    j["outputs"] = outputs;
    j["wall_ms"] = wall_ms;
    return j;
}

std::vector<ResultRecord> run_task(const RunConfig& cfg) {
    if (!cfg.model) throw ConfigError("run_task: config has no model");
    const IntensityModel& model = *cfg.model;
    const SimConfig& sim = cfg.sim;
    const std::string hash = config_hash_hex(cfg);
    const auto start = Clock::now();
    if (cfg.out_dir) std::filesystem::create_directories(*cfg.out_dir);

    std::vector<ResultRecord> records;
    auto make_record = [&](std::optional<int> replica, json outputs) {
        records.push_back(
            {cfg.task.name, hash, sim.seed, replica, std::move(outputs), ms_since(start)});
    };

    const std::string& name = cfg.task.name;

    if (name == "simulate") {
        const std::vector<EventStream> paths = simulate_replicas(model, sim);
        for (int r = 0; r < sim.replicas; ++r) {
            make_record(r, {{"n_events", paths[static_cast<std::size_t>(r)].count()},
                            {"mean_rate", paths[static_cast<std::size_t>(r)].mean_rate()},
                            {"horizon", sim.horizon}});
        }
        if (cfg.out_dir) {
            for (int r = 0; r < sim.replicas; ++r) {
                const auto& path = paths[static_cast<std::size_t>(r)];
                const std::string base = *cfg.out_dir + "/events_" + std::to_string(r);
                write_events_csv_file(path, base + ".csv");
                if (cfg.task.write_binary) write_events_binary_file(path, base + ".bin");
            }
        }
    } else if (name == "lln") {
        const LlnEstimate est = lln_estimate(model, sim);
        make_record(std::nullopt, {{"mean_rate", est.mean_rate},
                                   {"std_err", est.std_err},
                                   {"replicas", est.replicas},
                                   {"horizon", sim.horizon},
                                   {"burn_in", sim.burn_in}});
    } else if (name == "rate-fn") {
        const auto params = linear_params(model);
        if (!params) {
            throw ConfigError("rate-fn requires a linear rate with nu > 0");
        }
        const GridSpec& grid = *cfg.task.grid;
        const int n = static_cast<int>(std::llround((grid.to - grid.from) / grid.step)) + 1;
        for (int i = 0; i < n; ++i) {
            const double x = grid.from + grid.step * i;
            make_record(std::nullopt, {{"x", x}, {"rate_value", linear_rate_fn(*params, x)}});
        }
    } else if (name == "loglik") {
        const IntensityModel& target = *cfg.task.alternative;
        std::vector<GirsanovBreakdown> results(static_cast<std::size_t>(sim.replicas));
        parallel_replicas(static_cast<std::size_t>(sim.replicas), [&](std::size_t r) {
            const EventStream path = sim.burn_in > 0.0 ? burn_in_replica(model, sim, r)
                                                       : simulate_replica(model, sim, r);
            results[r] = girsanov_log_ratio(target, model, path);
        });
        for (int r = 0; r < sim.replicas; ++r) {
            const auto& g = results[static_cast<std::size_t>(r)];
            json out = {{"seed", sim.seed},
                        {"horizon", g.horizon},
                        {"compensator_diff", g.compensator_diff},
                        {"singular", g.singular}};
            out["jump_term"] = std::isfinite(g.jump_term) ? json(g.jump_term) : json();
            out["log_ratio"] = std::isfinite(g.log_ratio) ? json(g.log_ratio) : json();
            make_record(r, out);
        }
    } else if (name == "entropy") {
        const EntropyEstimate est = entropy_rate(*cfg.task.alternative, model, sim);
        for (int r = 0; r < est.replicas; ++r) {
            make_record(r, {{"seed", sim.seed},
                            {"horizon", sim.horizon},
                            {"value", est.per_replica[static_cast<std::size_t>(r)]}});
        }
        make_record(std::nullopt, {{"rate", est.rate},
                                   {"std_err", est.std_err},
                                   {"replicas", est.replicas},
                                   {"stationarity_bias", est.stationarity_bias},
                                   {"truncation_bound", est.truncation_bound}});
    } else if (name == "rare-event") {
        const double threshold = *cfg.task.threshold;
        const IntensityModel proposal = cfg.task.proposal
                                            ? *cfg.task.proposal
                                            : mean_matched_proposal(model, threshold);
        std::vector<double> horizons = cfg.task.horizons;
        if (horizons.empty()) horizons.push_back(sim.horizon);
        for (double horizon : horizons) {
            const RareEventEstimate est = rare_event_probability(
                model, threshold, horizon, proposal, sim, cfg.task.tail);
            make_record(std::nullopt, rare_event_to_json(est));
            if (!est.reliable) {
                make_record(std::nullopt, {{"warning", "unreliable_ess"},
                                           {"ess", est.ess},
                                           {"horizon", horizon}});
            }
        }
    } else if (name == "empirical") {
        const WindowFunctional f = build_functional(*cfg.task.window);
        const std::vector<EventStream> paths = simulate_replicas(model, sim);
        for (int r = 0; r < sim.replicas; ++r) {
            const auto& path = paths[static_cast<std::size_t>(r)];
            make_record(r, {{"value", empirical_functional(path, f)},
                            {"functional", f.name},
                            {"window_length", f.length},
                            {"n_events", path.count()},
                            {"mean_rate", path.mean_rate()}});
        }
    } else {
        throw ConfigError("unknown task: " + name);
    }

    if (cfg.out_dir) {
        std::ofstream results(*cfg.out_dir + "/results.jsonl");
        for (const auto& rec : records) results << rec.to_json().dump() << "\n";
        std::ofstream resolved(*cfg.out_dir + "/config.resolved");
        resolved << cfg.resolved.dump(2) << "\n";
    }
    return records;
}

}  // namespace hawkes::io
