#include "crsense/scenario.hpp"

#include <cmath>
#include <sstream>

namespace crsense::config {

double FadingConfig::resolved_rho() const {
    if (a && d) return std::exp(-(*a) * (*d));
    if (rho) return *rho;
    throw config_error("fading: correlation requires fading.rho or both fading.a and fading.d");
}

std::vector<std::string> validate(const ScenarioConfig& cfg) {
    std::vector<std::string> out;
    const auto bad = [&out](const std::string& key, const std::string& msg) {
        out.push_back(key + ": " + msg);
    };

    if (cfg.su_count < 1) bad("su_count", "must be at least 1");
    if (cfg.channel_count < 1) bad("channel_count", "must be at least 1");
    if (cfg.horizon < 1) bad("horizon", "must be at least 1");
    if (cfg.replications < 1) bad("replications", "must be at least 1");

    const double rows[2][2] = {{cfg.pu.p00, cfg.pu.p01}, {cfg.pu.p10, cfg.pu.p11}};
    const char* row_keys[2] = {"pu.p00+pu.p01", "pu.p10+pu.p11"};
    for (int r = 0; r < 2; ++r) {
        for (double p : rows[r])
            if (!(p >= 0.0 && p <= 1.0)) {
                bad(r == 0 ? "pu.p00/pu.p01" : "pu.p10/pu.p11", "entries must lie in [0,1]");
                break;
            }
        if (std::fabs(rows[r][0] + rows[r][1] - 1.0) > 1e-12)
            bad(row_keys[r], "row must sum to 1 (tolerance 1e-12)");
    }
    if (!(cfg.pu.p01 + cfg.pu.p10 > 0.0))
        bad("pu.p01+pu.p10", "must be positive so a stationary distribution exists");

    if (!std::isfinite(cfg.fading.mean_snr_db)) bad("fading.mean_snr_db", "must be finite");
    if (cfg.fading.sigma_db < 0.0) bad("fading.sigma_db", "must be nonnegative");
    if (cfg.fading.coherence_slots < 1) bad("fading.coherence_slots", "must be at least 1");
    if (cfg.fading.rho && !(*cfg.fading.rho >= 0.0 && *cfg.fading.rho <= 1.0))
        bad("fading.rho", "must lie in [0,1]");
    if (cfg.fading.a && *cfg.fading.a < 0.0) bad("fading.a", "must be nonnegative");
    if (cfg.fading.d && *cfg.fading.d < 0.0) bad("fading.d", "must be nonnegative");
    if (cfg.fading.model == FadingModel::lognormal_corr && !cfg.fading.rho &&
        !(cfg.fading.a && cfg.fading.d))
        bad("fading.rho", "lognormal_corr requires fading.rho or both fading.a and fading.d");

    if (cfg.mismatch.enabled) {
        if (!(cfg.mismatch.nmse > 0.0 && cfg.mismatch.nmse <= 1.0))
            bad("mismatch.nmse", "must lie in (0,1] (0 is the perfect-CSI path: disable mismatch)");
        if (cfg.fading.model != FadingModel::rayleigh_iid)
            bad("mismatch.enabled", "the mismatched-observation model is defined for rayleigh_iid fading");
    }

    if (cfg.reward.bandwidth.empty() ||
        (cfg.reward.bandwidth.size() != 1 &&
         cfg.reward.bandwidth.size() != static_cast<std::size_t>(cfg.channel_count)))
        bad("reward.bandwidth", "must be a scalar or one entry per channel");
    for (double b : cfg.reward.bandwidth)
        if (!(b > 0.0)) {
            bad("reward.bandwidth", "entries must be positive");
            break;
        }
    if (cfg.reward.kind == reward::RewardKind::adaptive_modulation &&
        !(cfg.reward.ber_target > 0.0 && cfg.reward.ber_target < 0.2))
        bad("reward.ber_target", "must lie in (0, 0.2)");

    if (cfg.detector.enabled) {
        if (cfg.detector.nu < 1) bad("detector.nu", "must be at least 1");
        if (!(cfg.detector.target_pm > 0.0 && cfg.detector.target_pm < 1.0))
            bad("detector.target_pm", "must lie strictly inside (0,1)");
        if (!std::isfinite(cfg.detector.pu_mean_snr_db))
            bad("detector.pu_mean_snr_db", "must be finite");
    }

    if (cfg.strategy.ca_top_l < 0) bad("strategy.ca_top_l", "must be nonnegative (0 = default)");

    if (cfg.metrics.window < 0) bad("metrics.window", "must be nonnegative (0 = cumulative)");
    if (!std::isfinite(cfg.metrics.pu_nominal_snr_db)) bad("metrics.pu_nominal_snr_db", "must be finite");

    if (!(cfg.numerics.relative_tolerance > 0.0 && cfg.numerics.relative_tolerance < 1e-2))
        bad("numerics.relative_tolerance", "must lie in (0, 1e-2)");
    if (cfg.numerics.max_subdivisions < 16) bad("numerics.max_subdivisions", "must be at least 16");

    return out;
}

void validate_or_throw(const ScenarioConfig& cfg) {
    const auto violations = validate(cfg);
    if (violations.empty()) return;
    std::ostringstream oss;
    oss << "invalid scenario configuration:";
    for (const auto& v : violations) oss << "\n  " << v;
    throw config_error(oss.str());
}

}  // namespace crsense::config
