#include "crsense/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crsense::reward {

void RewardModel::validate(int channel_count) const {
    if (bandwidth.empty() ||
        (bandwidth.size() != 1 && bandwidth.size() != static_cast<std::size_t>(channel_count)))
        throw config_error("reward.bandwidth must be a scalar or one entry per channel");
    for (double b : bandwidth)
        if (!(b > 0.0)) throw config_error("reward.bandwidth entries must be positive");
    if (kind == RewardKind::adaptive_modulation && !(ber_target > 0.0 && ber_target < 0.2))
        throw config_error("reward.ber_target must lie in (0, 0.2)");
}

double reward_conventional(double bandwidth) {
    if (!(bandwidth > 0.0)) throw std::domain_error("reward: bandwidth must be positive");
    return bandwidth;
}

double reward_capacity(double bandwidth, double gamma) {
    if (!(bandwidth > 0.0)) throw std::domain_error("reward: bandwidth must be positive");
    if (!(gamma >= 0.0)) throw std::domain_error("reward: SNR must be nonnegative");
    return bandwidth * std::log2(1.0 + gamma);
}

double reward_adaptive_modulation(double bandwidth, double gamma, double ber_target) {
    if (!(bandwidth > 0.0)) throw std::domain_error("reward: bandwidth must be positive");
    if (!(gamma >= 0.0)) throw std::domain_error("reward: SNR must be nonnegative");
    if (!(ber_target > 0.0 && ber_target < 0.2))
        throw config_error("reward: ber_target must lie in (0, 0.2)");
    // ln(5 ber) < 0 here, so the rate is nonnegative and increasing in gamma.
    return bandwidth * std::log2(1.0 - 1.5 * gamma / std::log(5.0 * ber_target));
}

double evaluate(const RewardModel& model, int channel, double gamma) {
    const double b = model.bandwidth_for(channel);
    switch (model.kind) {
        case RewardKind::conventional: return reward_conventional(b);
        case RewardKind::capacity: return reward_capacity(b, gamma);
        case RewardKind::adaptive_modulation:
            return reward_adaptive_modulation(b, gamma, model.ber_target);
    }
    throw std::logic_error("reward: unknown kind");
}

namespace {

double unit_reward(RewardKind kind, double gamma, double ber_target) {
    switch (kind) {
        case RewardKind::conventional: return 1.0;
        case RewardKind::capacity: return std::log2(1.0 + gamma);
        case RewardKind::adaptive_modulation:
            return std::log2(1.0 - 1.5 * gamma / std::log(5.0 * ber_target));
    }
    throw std::logic_error("reward: unknown kind");
}

double expected_unit_reward(double gamma_hat, const channel::MismatchModel& mismatch,
                            RewardKind kind, double ber_target,
                            const numerics::QuadratureSpec& spec) {
    // The conditional density concentrates around the conditional mean; hand
    // the quadrature that neighbourhood as initial panel boundaries.
    const double shrink = mismatch.form == channel::DensityForm::corrected ? 1.0 - mismatch.nmse : 1.0;
    const double scale = mismatch.mean_snr * mismatch.nmse;
    const double mean = scale + shrink * gamma_hat;
    const double sd = std::sqrt(scale * scale + 2.0 * scale * shrink * gamma_hat);
    const double hints[4] = {std::max(0.0, mean - 6.0 * sd), mean, mean + 6.0 * sd,
                             mismatch.mean_snr};
    const auto integrand = [&](double gamma) {
        return unit_reward(kind, gamma, ber_target) *
               channel::conditional_snr_density(gamma, gamma_hat, mismatch.nmse,
                                                mismatch.mean_snr, mismatch.form);
    };
    return numerics::integrate_semi_infinite(integrand, spec, hints);
}

}  // namespace

double reward_mismatched(double gamma_hat, const channel::MismatchModel& mismatch,
                         const RewardModel& base, int channel,
                         const numerics::QuadratureSpec& spec) {
    if (!(gamma_hat >= 0.0)) throw std::domain_error("reward_mismatched: observation must be nonnegative");
    if (base.kind == RewardKind::conventional) return base.bandwidth_for(channel);
    if (base.kind == RewardKind::adaptive_modulation &&
        !(base.ber_target > 0.0 && base.ber_target < 0.2))
        throw config_error("reward: ber_target must lie in (0, 0.2)");
    return base.bandwidth_for(channel) *
           expected_unit_reward(gamma_hat, mismatch, base.kind, base.ber_target, spec);
}

MismatchedRewardTable::MismatchedRewardTable(const channel::MismatchModel& mismatch,
                                             RewardKind kind, double ber_target,
                                             const numerics::QuadratureSpec& spec) {
    if (kind == RewardKind::adaptive_modulation && !(ber_target > 0.0 && ber_target < 0.2))
        throw config_error("reward: ber_target must lie in (0, 0.2)");

    constexpr int kPoints = 512;
    const double lo = 1e-4 * mismatch.mean_snr;
    const double hi = 80.0 * mismatch.mean_snr;
    log_lo_ = std::log(lo);
    const double log_step = (std::log(hi) - log_lo_) / (kPoints - 1);
    inv_log_step_ = 1.0 / log_step;

    abscissa_.resize(kPoints);
    values_.resize(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        abscissa_[i] = std::exp(log_lo_ + i * log_step);
        values_[i] = kind == RewardKind::conventional
                         ? 1.0
                         : expected_unit_reward(abscissa_[i], mismatch, kind, ber_target, spec);
    }
}

double MismatchedRewardTable::lookup(double gamma_hat) const {
    if (!(gamma_hat >= 0.0)) throw std::domain_error("reward table: observation must be nonnegative");
    if (gamma_hat <= abscissa_.front()) return values_.front();
    if (gamma_hat >= abscissa_.back()) return values_.back();
    auto i = static_cast<std::size_t>((std::log(gamma_hat) - log_lo_) * inv_log_step_);
    i = std::min(i, abscissa_.size() - 2);
    if (gamma_hat < abscissa_[i]) --i;  // guard against log/exp rounding at cell edges
    const double t = (gamma_hat - abscissa_[i]) / (abscissa_[i + 1] - abscissa_[i]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

}  // namespace crsense::reward
