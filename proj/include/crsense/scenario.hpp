#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crsense/channel.hpp"
#include "crsense/errors.hpp"
#include "crsense/reward.hpp"
#include "crsense/strategy.hpp"

namespace crsense::config {

enum class FadingModel { rayleigh_iid, lognormal_corr };

struct PuConfig {
    double p00 = 0.8, p01 = 0.2, p10 = 0.2, p11 = 0.8;
};

struct FadingConfig {
    FadingModel model = FadingModel::rayleigh_iid;
    double mean_snr_db = 10.0;  // dB mean for lognormal, mean of the linear SNR for rayleigh
    double sigma_db = 5.0;      // lognormal dB-spread
    std::optional<double> rho;  // lognormal link correlation, direct
    std::optional<double> a;    // or derived: rho = exp(-a d) when both are set
    std::optional<double> d;
    int coherence_slots = 20;

    double mean_snr_linear() const { return std::pow(10.0, mean_snr_db / 10.0); }
    /// Explicit rho unless both a and d are given, in which case exp(-a d) wins.
    double resolved_rho() const;
};

struct MismatchConfig {
    bool enabled = false;
    double nmse = 0.1;
    channel::DensityForm density_form = channel::DensityForm::corrected;
};

struct RewardConfig {
    reward::RewardKind kind = reward::RewardKind::capacity;
    double ber_target = 1e-3;
    std::vector<double> bandwidth{1.0};
};

struct DetectorConfig {
    bool enabled = false;
    int nu = 5;
    double target_pm = 0.1;
    double pu_mean_snr_db = 10.0;
};

struct StrategyConfig {
    strategy::StrategyKind kind = strategy::StrategyKind::CsiAided;
    int ca_top_l = 0;  // 0: min(su_count, channel_count)
};

struct MetricsConfig {
    int window = 0;  // 0: cumulative running average
    double pu_nominal_snr_db = 10.0;
};

struct NumericsConfig {
    double relative_tolerance = 1e-8;
    int max_subdivisions = 4096;
};

struct ScenarioConfig {
    int su_count = 20;
    int channel_count = 40;
    int horizon = 2000;
    int replications = 200;
    std::uint64_t seed = 1;

    PuConfig pu;
    FadingConfig fading;
    MismatchConfig mismatch;
    RewardConfig reward;
    DetectorConfig detector;
    StrategyConfig strategy;
    MetricsConfig metrics;
    NumericsConfig numerics;
};

/// Every invariant violation as a "key.path: message" line; empty when valid.
std::vector<std::string> validate(const ScenarioConfig& cfg);

/// Throws config_error listing all violations.
void validate_or_throw(const ScenarioConfig& cfg);

}  // namespace crsense::config
