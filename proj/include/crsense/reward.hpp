#pragma once

#include <vector>

#include "crsense/channel.hpp"
#include "crsense/errors.hpp"
#include "crsense/numerics.hpp"

namespace crsense::reward {

enum class RewardKind { conventional, capacity, adaptive_modulation };

struct RewardModel {
    RewardKind kind = RewardKind::capacity;
    std::vector<double> bandwidth{1.0};  // scalar broadcasts over all channels
    double ber_target = 1e-3;            // adaptive_modulation only

    double bandwidth_for(int channel) const {
        return bandwidth.size() == 1 ? bandwidth[0] : bandwidth[static_cast<std::size_t>(channel)];
    }
    void validate(int channel_count) const;
};

/// Fixed bandwidth reward, independent of CSI.
double reward_conventional(double bandwidth);

/// Shannon capacity of the link at the given SNR.
double reward_capacity(double bandwidth, double gamma);

/// Continuous-rate adaptive QAM spectral efficiency under a BER constraint.
/// ber_target must lie in (0, 0.2) so the rate is nonnegative.
double reward_adaptive_modulation(double bandwidth, double gamma, double ber_target);

/// Dispatch on the model's kind with its per-channel bandwidth.
double evaluate(const RewardModel& model, int channel, double gamma);

/// Expected reward given a mismatched SNR observation: quadrature of the
/// base reward against the conditional SNR density. Exact (uncached) form.
double reward_mismatched(double gamma_hat, const channel::MismatchModel& mismatch,
                         const RewardModel& base, int channel = 0,
                         const numerics::QuadratureSpec& spec = {});

/// Precomputed unit-bandwidth table of reward_mismatched on a log-spaced
/// observation grid with linear interpolation, for per-slot use. Scale by
/// the channel bandwidth at the call site.
class MismatchedRewardTable {
public:
    MismatchedRewardTable(const channel::MismatchModel& mismatch, RewardKind kind,
                          double ber_target, const numerics::QuadratureSpec& spec = {});

    double lookup(double gamma_hat) const;

    int size() const { return static_cast<int>(values_.size()); }

private:
    std::vector<double> abscissa_;  // gamma_hat grid
    std::vector<double> values_;
    double log_lo_ = 0.0, inv_log_step_ = 0.0;
};

}  // namespace crsense::reward
