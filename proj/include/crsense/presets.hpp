#pragma once

#include <string>
#include <vector>

#include "crsense/config.hpp"

namespace crsense::cli {

enum class SweepVar { none, rho, mean_snr_db, nmse, target_pm };

/// CSV column name of the sweep variable ("slot" for time series).
const char* sweep_var_name(SweepVar v);

/// A named scenario family: a base configuration, the swept variable and its
/// grid, and the set of strategies compared at every grid point.
struct Preset {
    std::string name;
    config::ConfigMap base;
    SweepVar sweep = SweepVar::none;
    std::vector<double> grid;               // empty for time-series presets
    std::vector<std::string> strategies;    // config-style names
};

std::vector<std::string> preset_names();
Preset make_preset(const std::string& name);  // throws config_error on unknown names

/// Writes one sweep value into a grid point's config. nmse = 0 is the
/// perfect-CSI reference point and disables the mismatch model instead.
void apply_sweep_value(config::ConfigMap& map, SweepVar var, double value);

}  // namespace crsense::cli
