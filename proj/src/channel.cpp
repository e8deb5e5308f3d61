#include "crsense/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "crsense/numerics.hpp"

namespace crsense::channel {

LinkGainField rayleigh_block_field(double mean_snr, int su_count, int channel_count,
                                   RandomStream& rng, int coherence_slots) {
    if (!(mean_snr > 0.0)) throw std::domain_error("rayleigh_block_field: mean SNR must be positive");
    LinkGainField f;
    f.coherence_slots = coherence_slots;
    f.snr = Matrix(su_count, channel_count);
    for (double& g : f.snr.v) g = rng.exponential(mean_snr);
    f.snr_estimate = f.snr;
    return f;
}

double spatial_correlation(double a, double d, int m, int m_other) {
    if (a < 0.0 || d < 0.0) throw std::domain_error("spatial_correlation: a and d must be nonnegative");
    return std::exp(-a * d * std::abs(m - m_other));
}

LinkGainField lognormal_shadow_field(double rho, double mu_db, double sigma_db,
                                     int su_count, int channel_count, RandomStream& rng,
                                     int coherence_slots) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("lognormal_shadow_field: rho must lie in [0,1]");
    if (sigma_db < 0.0) throw std::domain_error("lognormal_shadow_field: sigma_db must be nonnegative");
    LinkGainField f;
    f.coherence_slots = coherence_slots;
    f.snr = Matrix(su_count, channel_count);
    const double innovation = sigma_db * std::sqrt(1.0 - rho * rho);
    for (int n = 0; n < channel_count; ++n) {
        double x = 0.0;
        for (int m = 0; m < su_count; ++m) {
            // centered AR(1) with stationary std sigma_db
            x = (m == 0) ? sigma_db * rng.normal() : rho * x + innovation * rng.normal();
            f.snr(m, n) = std::pow(10.0, (mu_db + x) / 10.0);
        }
    }
    f.snr_estimate = f.snr;
    return f;
}

double conditional_snr_density(double gamma, double gamma_hat, double nmse,
                               double mean_snr, DensityForm form) {
    if (!(gamma >= 0.0) || !(gamma_hat >= 0.0))
        throw std::domain_error("conditional_snr_density: SNR values must be nonnegative");
    if (!(mean_snr > 0.0)) throw std::domain_error("conditional_snr_density: mean SNR must be positive");
    if (nmse == 0.0)
        throw std::domain_error("conditional_snr_density: nmse = 0 is a point mass; use the perfect-CSI path");
    if (!(nmse > 0.0 && nmse <= 1.0))
        throw std::domain_error("conditional_snr_density: nmse must lie in (0,1]");

    // shrink = 1 - sigma^2 in the corrected form; the printed form keeps the
    // observation unshrunk (selectable for comparison, no marginal limit at
    // nmse = 1).
    const double shrink = form == DensityForm::corrected ? 1.0 - nmse : 1.0;
    const double scale = mean_snr * nmse;
    const double arg = 2.0 * std::sqrt(shrink * gamma * gamma_hat) / scale;
    const double expo = arg - (gamma + shrink * gamma_hat) / scale;
    return numerics::bessel_i0_scaled(arg) * std::exp(expo) / scale;
}

LinkGainField observe_with_mismatch(const LinkGainField& field, const MismatchModel& model,
                                    RandomStream& rng) {
    if (!(model.nmse > 0.0 && model.nmse <= 1.0))
        throw std::domain_error("observe_with_mismatch: nmse must lie in (0,1]");
    if (!(model.mean_snr > 0.0))
        throw std::domain_error("observe_with_mismatch: mean SNR must be positive");

    const double r = std::sqrt(1.0 - model.nmse);   // gain correlation
    const double w = std::sqrt(model.nmse);         // innovation weight
    const double half = std::sqrt(0.5);             // per-component std of a unit CN gain

    LinkGainField out;
    out.coherence_slots = field.coherence_slots;
    out.snr = Matrix(field.snr.rows, field.snr.cols);
    out.snr_estimate = Matrix(field.snr.rows, field.snr.cols);
    for (std::size_t i = 0; i < out.snr.v.size(); ++i) {
        const double er = half * rng.normal(), ei = half * rng.normal();  // estimate gain
        const double wr = half * rng.normal(), wi = half * rng.normal();  // innovation
        const double hr = r * er + w * wr, hi = r * ei + w * wi;          // true gain
        out.snr.v[i] = model.mean_snr * (hr * hr + hi * hi);
        out.snr_estimate.v[i] = model.mean_snr * (er * er + ei * ei);
    }
    return out;
}

}  // namespace crsense::channel
