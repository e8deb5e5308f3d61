#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crsense/csv.hpp"
#include "crsense/presets.hpp"

namespace crsense::cli {

struct RunOptions {
    std::string out_dir = ".";
    std::vector<std::string> overrides;  // "key=value", applied after the sweep value
    std::optional<std::uint64_t> seed;
    std::optional<int> replications;
    bool svg = false;
    int threads = 0;  // 0: hardware count capped by CRSENSE_THREADS
};

/// Worker cap from the CRSENSE_THREADS environment variable (0 = no cap).
int thread_cap_from_env();

/// Effective worker count for the given options.
int resolve_threads(const RunOptions& opts);

/// Runs every grid point of the preset for every strategy in its comparison
/// set. Time-series presets produce one row per (slot, strategy); sweeps one
/// row per (grid value, strategy, metric).
std::vector<CsvRow> execute_preset(const Preset& preset, const RunOptions& opts);

/// execute_preset + CSV (and optional SVG) under out_dir + a summary table.
/// Returns the CSV path.
std::string run_preset_to_files(const Preset& preset, const RunOptions& opts, std::ostream& log);

/// A config file behaves like a single-scenario time-series preset using the
/// file's own strategy.
std::string run_config_file(const std::string& path, const RunOptions& opts, std::ostream& log);

}  // namespace crsense::cli
