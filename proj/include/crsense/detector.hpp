#pragma once

#include "crsense/errors.hpp"
#include "crsense/numerics.hpp"
#include "crsense/pu_traffic.hpp"
#include "crsense/rng.hpp"

namespace crsense::detector {

/// Energy-detector operating point. The triple (nu, tau, pu_mean_snr)
/// determines (p_m, p_f); calibrate_threshold produces consistent profiles.
struct DetectorProfile {
    int nu = 5;                // collected samples
    double tau = 0.0;          // detection threshold
    double p_m = 0.0;          // miss-detection probability
    double p_f = 0.0;          // false-alarm probability
    double pu_mean_snr = 10.0; // mean PU-signal SNR at the sensor, linear
};

/// Probability of declaring a quiet channel busy: the central chi-square
/// tail above the threshold.
double false_alarm_rate(int nu, double tau);

/// Probability of missing an active PU whose sensed SNR is exponentially
/// distributed with the given mean: one minus the Marcum detection
/// probability averaged over that SNR law.
double miss_rate(int nu, double tau, double pu_mean_snr,
                 const numerics::QuadratureSpec& spec = {});

/// Bisection on tau until |miss_rate - target_pm| < 1e-6, then p_f follows
/// from the threshold. target_pm must lie strictly inside (0, 1).
DetectorProfile calibrate_threshold(int nu, double target_pm, double pu_mean_snr);

/// Noisy observation of a channel state: a busy channel reads idle with
/// probability p_m, an idle channel reads busy with probability p_f.
pu_traffic::ChannelState sense(pu_traffic::ChannelState true_state,
                               const DetectorProfile& profile, RandomStream& rng);

}  // namespace crsense::detector
