#pragma once

#include <stdexcept>
#include <string>

namespace hawkes {

// Configuration document failed to parse or violated a model invariant.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A simulated path exceeded the configured event ceiling.
struct ExplosionError : std::runtime_error {
    explicit ExplosionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hawkes
