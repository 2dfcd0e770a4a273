#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hawkes/event_stream.hpp"
#include "hawkes/ldp.hpp"
#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"

namespace hawkes::io {

// --- event stream persistence -----------------------------------------------

// CSV with a single `time` column; history rows carry non-positive times.
// Values are written with 17 significant digits so doubles round-trip.
void write_events_csv(const EventStream& stream, std::ostream& out);
void write_events_csv_file(const EventStream& stream, const std::string& path);
EventStream read_events_csv(std::istream& in, double horizon);
EventStream read_events_csv_file(const std::string& path, double horizon);

// Framed little-endian binary: magic "HWKLDP01", f64 horizon, u64 history
// count, u64 event count, then the raw f64 arrays.
void write_events_binary_file(const EventStream& stream, const std::string& path);
EventStream read_events_binary_file(const std::string& path);

// --- configuration -----------------------------------------------------------

struct GridSpec {
    double from = 0.0;
    double to = 0.0;
    double step = 0.1;
};

struct WindowSpec {
    double length = 1.0;
    std::string functional = "count";  // count | indicator | truncated_count | max_gap
    int m = 1;                         // threshold for indicator / truncated_count
};

struct TaskSpec {
    std::string name;  // simulate | loglik | entropy | rate-fn | rare-event | empirical | lln
    std::optional<IntensityModel> alternative;  // loglik, entropy
    std::optional<double> threshold;            // rare-event
    Tail tail = Tail::Upper;
    std::optional<IntensityModel> proposal;  // rare-event; mean-matched when absent
    std::vector<double> horizons;            // rare-event ladder; sim horizon if empty
    std::optional<GridSpec> grid;            // rate-fn
    std::optional<WindowSpec> window;        // empirical
    bool write_binary = false;               // simulate
};

struct RunConfig {
    std::optional<IntensityModel> model;
    SimConfig sim;
    TaskSpec task;
    std::optional<std::string> out_dir;
    nlohmann::json resolved;  // canonical echo of the parsed document
};

// Strict parse: unknown keys are rejected, fields are validated through the
// model constructors and the violated invariant is named in the message.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// FNV-1a over the canonical serialization of {model, sim, task}; stable
// under key reordering in the source document.
std::string config_hash_hex(const RunConfig& cfg);

// --- task execution ----------------------------------------------------------

struct ResultRecord {
    std::string task;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::optional<int> replica;
    nlohmann::json outputs;
    double wall_ms = 0.0;

    nlohmann::json to_json() const;
};

// Executes the configured task. When cfg.out_dir is set, also writes
// events_<replica>.csv (simulate), results.jsonl, and config.resolved.
std::vector<ResultRecord> run_task(const RunConfig& cfg);

}  // namespace hawkes::io
