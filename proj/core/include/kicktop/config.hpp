#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kicktop/spincore.hpp"

namespace kicktop {

/// Bad user configuration; the CLI maps it to exit status 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable file; the CLI maps it to exit status 2.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Evolve, Portrait, Husimi, DeltaNeff, RmtCompare, Stats };

std::string to_string(ExperimentKind kind);
/// Throws ConfigError for an unknown name.
ExperimentKind parse_experiment(const std::string& name);

enum class StatsMode { SingleTop, RdmEigenvectors };

struct RunConfig {
    ExperimentKind experiment = ExperimentKind::Evolve;
    SpinQuantum spin{160};
    /// Unset tops fall back to 6.0; rmt-compare defaults k2 to 6.1.
    std::optional<double> k1;
    std::optional<double> k2;
    double epsilon = 1e-2;
    std::vector<double> eps_list{1e-4, 1e-3, 1e-2};
    std::size_t steps = 1000;
    double theta0 = 0.89;
    double phi0 = 0.63;
    std::size_t grid_theta = 200;
    std::size_t grid_phi = 400;
    std::uint64_t seed = 1;
    std::filesystem::path out = ".";
    std::size_t stride = 1;
    /// Snapshot steps for husimi and stats; empty means {0, steps}.
    std::vector<std::size_t> snapshots;
    std::size_t portrait_grid = 20;
    std::size_t portrait_iter = 500;
    std::size_t ic_grid = 4;
    StatsMode stats_mode = StatsMode::SingleTop;
    /// Leading RDM eigenvectors pooled per snapshot in RdmEigenvectors mode.
    std::size_t pool_vectors = 10;

    double resolved_k1() const;
    double resolved_k2() const;
    std::vector<std::size_t> resolved_snapshots() const;

    /// Sets one key from its text form. Throws ConfigError on an unknown key
    /// or a malformed or out-of-range value.
    void set(const std::string& key, const std::string& value);

    /// Every key with its resolved value, in a fixed order.
    std::vector<std::pair<std::string, std::string>> entries() const;

    /// key = value text that parses back to an equivalent config.
    std::string to_text() const;
};

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
/// Later lines override earlier ones.
std::map<std::string, std::string> parse_key_values(const std::string& text);

RunConfig parse_config(const std::string& text, RunConfig base = {});

/// Reads a config file. A missing or unreadable file throws IoError.
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Shortest decimal text that reads back to the same double.
std::string format_exact(double value);

} // namespace kicktop
