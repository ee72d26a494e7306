#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "pdptw/errors.hpp"

namespace pdptw {

/// Genetic-algorithm parameters. Field names double as keys of the key-value config file.
struct GaConfig {
    int population_size = 50;
    int generations = 200;
    double crossover_rate = 0.7;
    double mutation_rate = 0.2;
    double copy_rate = 0.1;
    double lambda1 = 0.5;
    double lambda2 = 0.5;
    int split_samples = 4;  ///< split vectors tried per offspring permutation
    std::uint64_t seed = 1;
    int archive_capacity = 256;  ///< 0 = unbounded

    void validate() const {
        auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!prob(crossover_rate) || !prob(mutation_rate) || !prob(copy_rate))
            throw ConfigError("operator rates must lie in [0, 1]");
        if (std::abs(crossover_rate + mutation_rate + copy_rate - 1.0) > 1e-9)
            throw ConfigError("crossover_rate + mutation_rate + copy_rate must equal 1");
        if (population_size < 2) throw ConfigError("population_size must be at least 2");
        if (generations < 0) throw ConfigError("generations must be non-negative");
        if (split_samples < 1) throw ConfigError("split_samples must be at least 1");
        if (lambda1 < 0 || lambda2 < 0 || std::abs(lambda1 + lambda2 - 1.0) > 1e-9)
            throw ConfigError("lambda1 and lambda2 must be non-negative and sum to 1");
        if (archive_capacity < 0 || archive_capacity == 1)
            throw ConfigError("archive_capacity must be 0 (unbounded) or at least 2");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T config_value(const std::string& key, const std::string& text) {
    std::istringstream is(text);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw ConfigError("bad value for " + key + ": '" + text + "'");
    return v;
}

} // namespace detail

/// Applies `key = value` lines on top of `base`. '#' starts a comment.
inline GaConfig parse_config(std::istream& in, GaConfig base = {}) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key == "population_size") base.population_size = detail::config_value<int>(key, val);
        else if (key == "generations") base.generations = detail::config_value<int>(key, val);
        else if (key == "crossover_rate") base.crossover_rate = detail::config_value<double>(key, val);
        else if (key == "mutation_rate") base.mutation_rate = detail::config_value<double>(key, val);
        else if (key == "copy_rate") base.copy_rate = detail::config_value<double>(key, val);
        else if (key == "lambda1") base.lambda1 = detail::config_value<double>(key, val);
        else if (key == "lambda2") base.lambda2 = detail::config_value<double>(key, val);
        else if (key == "split_samples") base.split_samples = detail::config_value<int>(key, val);
        else if (key == "seed") base.seed = detail::config_value<std::uint64_t>(key, val);
        else if (key == "archive_capacity") base.archive_capacity = detail::config_value<int>(key, val);
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    base.validate();
    return base;
}

inline GaConfig load_config(const std::string& path, GaConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse_config(in, base);
}

} // namespace pdptw
