#pragma once

#include <cstddef>
#include <vector>

#include "crsense/errors.hpp"
#include "crsense/rng.hpp"

namespace crsense::channel {

/// Dense row-major matrix of per-link values (SU rows, channel columns).
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> v;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}

    double operator()(int m, int n) const { return v[static_cast<std::size_t>(m) * cols + n]; }
    double& operator()(int m, int n) { return v[static_cast<std::size_t>(m) * cols + n]; }
};

/// Instantaneous link SNRs (linear scale) and what the sensing policy
/// observes of them. Regenerated once per coherence block.
struct LinkGainField {
    Matrix snr;
    Matrix snr_estimate;
    int coherence_slots = 1;
};

struct ShadowingModel {
    double a = 0.0;  // environment decay constant, 1/m
    double d = 0.0;  // inter-transmitter spacing, m
    double mu_db = 10.0;
    double sigma_db = 5.0;
};

enum class DensityForm { corrected, printed };

/// Imperfect-CSI observation model. nmse = 0 means perfect CSI and is not a
/// valid density parameter; nmse = 1 means the estimate carries no information.
struct MismatchModel {
    double nmse = 0.1;       // sigma^2 in (0, 1]
    double mean_snr = 10.0;  // linear
    DensityForm form = DensityForm::corrected;
};

/// i.i.d. exponential SNRs with the given mean (Rayleigh amplitude fading);
/// the estimate equals the truth. Draws row-major, one per link.
LinkGainField rayleigh_block_field(double mean_snr, int su_count, int channel_count,
                                   RandomStream& rng, int coherence_slots = 1);

/// exp(-a d)^{|m - m'|}
double spatial_correlation(double a, double d, int m, int m_other);

/// Per channel: a first-order autoregressive dB-scale Gaussian sequence over
/// the SU index with stationary mean mu_db, std sigma_db and lag-k
/// correlation rho^k; channels are independent. Linear SNR = 10^(x/10).
LinkGainField lognormal_shadow_field(double rho, double mu_db, double sigma_db,
                                     int su_count, int channel_count, RandomStream& rng,
                                     int coherence_slots = 1);

/// Density of the true SNR given a mismatched observation, for exponential
/// (Rayleigh-power) links. Uses the scaled Bessel form throughout so large
/// arguments cannot overflow. nmse = 0 is rejected: that limit is a point
/// mass and callers must use the perfect-CSI path instead.
double conditional_snr_density(double gamma, double gamma_hat, double nmse,
                               double mean_snr, DensityForm form = DensityForm::corrected);

/// Jointly consistent (snr, snr_estimate) pairs: two correlated unit-variance
/// circular complex Gaussian gains with squared correlation 1 - nmse, scaled
/// by the mean SNR. The conditional law of snr given snr_estimate is
/// conditional_snr_density (corrected form).
LinkGainField observe_with_mismatch(const LinkGainField& field, const MismatchModel& model,
                                    RandomStream& rng);

}  // namespace crsense::channel
