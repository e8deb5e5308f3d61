#include "crsense/detector.hpp"

#include <cmath>
#include <stdexcept>

namespace crsense::detector {

double false_alarm_rate(int nu, double tau) {
    if (nu < 1) throw std::domain_error("false_alarm_rate: nu must be a positive integer");
    if (!(tau >= 0.0)) throw std::domain_error("false_alarm_rate: tau must be nonnegative");
    return numerics::gamma_upper_regularized(static_cast<double>(nu), 0.5 * tau);
}

double miss_rate(int nu, double tau, double pu_mean_snr, const numerics::QuadratureSpec& spec) {
    if (nu < 1) throw std::domain_error("miss_rate: nu must be a positive integer");
    if (!(tau >= 0.0)) throw std::domain_error("miss_rate: tau must be nonnegative");
    if (!(pu_mean_snr > 0.0)) throw std::domain_error("miss_rate: mean SNR must be positive");
    if (tau == 0.0) return 0.0;  // everything exceeds a zero threshold

    const double sqrt_tau = std::sqrt(tau);
    const auto detect_avg = [&](double lambda) {
        return numerics::marcum_q(nu, std::sqrt(2.0 * nu * lambda), sqrt_tau) *
               std::exp(-lambda / pu_mean_snr) / pu_mean_snr;
    };
    const double hints[2] = {pu_mean_snr, tau / (2.0 * nu)};
    const double detected = numerics::integrate_semi_infinite(detect_avg, spec, hints);
    return std::min(1.0, std::max(0.0, 1.0 - detected));
}

DetectorProfile calibrate_threshold(int nu, double target_pm, double pu_mean_snr) {
    if (!(target_pm > 0.0 && target_pm < 1.0))
        throw config_error("calibrate_threshold: target miss rate must lie strictly inside (0,1)");
    if (nu < 1) throw config_error("calibrate_threshold: nu must be a positive integer");
    if (!(pu_mean_snr > 0.0)) throw config_error("calibrate_threshold: mean SNR must be positive");

    // miss_rate is continuous, 0 at tau = 0 and -> 1 as tau grows: bracket by
    // doubling, then bisect.
    double lo = 0.0, hi = 1.0;
    double pm_hi = miss_rate(nu, hi, pu_mean_snr);
    int guard = 0;
    while (pm_hi < target_pm) {
        lo = hi;
        hi *= 2.0;
        pm_hi = miss_rate(nu, hi, pu_mean_snr);
        if (++guard > 200) throw config_error("calibrate_threshold: failed to bracket target miss rate");
    }

    double tau = hi, pm = pm_hi;
    for (int i = 0; i < 200; ++i) {
        tau = 0.5 * (lo + hi);
        pm = miss_rate(nu, tau, pu_mean_snr);
        if (std::fabs(pm - target_pm) < 1e-6) break;
        (pm < target_pm ? lo : hi) = tau;
    }
    if (std::fabs(pm - target_pm) >= 1e-6)
        throw convergence_error("calibrate_threshold: bisection did not reach tolerance", tau, 200);

    DetectorProfile prof;
    prof.nu = nu;
    prof.tau = tau;
    prof.p_m = pm;
    prof.p_f = false_alarm_rate(nu, tau);
    prof.pu_mean_snr = pu_mean_snr;
    return prof;
}

pu_traffic::ChannelState sense(pu_traffic::ChannelState true_state,
                               const DetectorProfile& profile, RandomStream& rng) {
    const double u = rng.uniform01();
    if (true_state == pu_traffic::ChannelState::busy)
        return u < profile.p_m ? pu_traffic::ChannelState::idle : pu_traffic::ChannelState::busy;
    return u < profile.p_f ? pu_traffic::ChannelState::busy : pu_traffic::ChannelState::idle;
}

}  // namespace crsense::detector
