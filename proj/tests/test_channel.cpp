#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "crsense/channel.hpp"
#include "crsense/numerics.hpp"
#include "oracles.hpp"

using namespace crsense;
using oracles::rel_err;

TEST_CASE("rayleigh field statistics") {
    RandomStream rng(11);
    const auto f = channel::rayleigh_block_field(10.0, 1000, 1000, rng);
    double sum = 0.0;
    long above = 0;
    for (double g : f.snr.v) {
        sum += g;
        above += g > 10.0;
    }
    const double n = static_cast<double>(f.snr.v.size());
    CHECK(std::fabs(sum / n - 10.0) < 0.1);
    CHECK(std::fabs(above / n - std::exp(-1.0)) < 0.005);
    CHECK(f.snr_estimate.v == f.snr.v);  // perfect CSI

    const auto empty = channel::rayleigh_block_field(10.0, 0, 5, rng);
    CHECK(empty.snr.v.empty());
}

TEST_CASE("spatial correlation") {
    CHECK(channel::spatial_correlation(0.12, 0.0, 3, 9) == 1.0);
    CHECK(std::fabs(channel::spatial_correlation(0.12, 0.88, 5, 6) - 0.90) < 0.005);
    CHECK(std::fabs(channel::spatial_correlation(0.002, 52.68, 2, 3) - 0.90) < 0.005);
    CHECK(channel::spatial_correlation(0.1, 2.0, 4, 4) == 1.0);
    CHECK_THROWS_AS(channel::spatial_correlation(-0.1, 1.0, 0, 1), std::domain_error);
}

TEST_CASE("lognormal shadow field moments") {
    RandomStream rng(5);
    const int su = 4, ch = 25000;
    const auto f = channel::lognormal_shadow_field(0.0, 10.0, 5.0, su, ch, rng);
    double mean = 0.0, sq = 0.0;
    for (double g : f.snr.v) {
        const double db = 10.0 * std::log10(g);
        mean += db;
        sq += db * db;
    }
    const double n = static_cast<double>(f.snr.v.size());
    mean /= n;
    const double stddev = std::sqrt(sq / n - mean * mean);
    CHECK(std::fabs(mean - 10.0) < 0.1);
    CHECK(std::fabs(stddev - 5.0) < 0.1);
}

TEST_CASE("lognormal shadow field degenerate correlation") {
    RandomStream rng(6);
    const auto f = channel::lognormal_shadow_field(1.0, 10.0, 5.0, 6, 4, rng);
    for (int n = 0; n < 4; ++n)
        for (int m = 1; m < 6; ++m) CHECK(f.snr(m, n) == f.snr(0, n));
    CHECK_THROWS_AS(channel::lognormal_shadow_field(1.5, 10, 5, 2, 2, rng), std::domain_error);
}

TEST_CASE("lognormal shadow field lag correlations and Toeplitz covariance") {
    RandomStream rng(8);
    const int su = 6, fields = 100000;
    const double rho = 0.5, sigma = 5.0, mu = 10.0;
    std::vector<double> cov(su * su, 0.0), mean(su, 0.0);
    std::vector<double> x(su);
    for (int f = 0; f < fields; ++f) {
        const auto field = channel::lognormal_shadow_field(rho, mu, sigma, su, 1, rng);
        for (int m = 0; m < su; ++m) {
            x[m] = 10.0 * std::log10(field.snr(m, 0));
            mean[m] += x[m];
        }
        for (int i = 0; i < su; ++i)
            for (int j = 0; j < su; ++j) cov[i * su + j] += x[i] * x[j];
    }
    for (int m = 0; m < su; ++m) mean[m] /= fields;
    double frob_err = 0.0, frob_ref = 0.0;
    double lag1 = 0.0, lag2 = 0.0;
    int lag1_n = 0, lag2_n = 0;
    for (int i = 0; i < su; ++i)
        for (int j = 0; j < su; ++j) {
            const double c = cov[i * su + j] / fields - mean[i] * mean[j];
            const double ref = std::pow(rho, std::abs(i - j)) * sigma * sigma;
            frob_err += (c - ref) * (c - ref);
            frob_ref += ref * ref;
            if (std::abs(i - j) == 1) {
                lag1 += c / (sigma * sigma);
                ++lag1_n;
            }
            if (std::abs(i - j) == 2) {
                lag2 += c / (sigma * sigma);
                ++lag2_n;
            }
        }
    CHECK(std::sqrt(frob_err / frob_ref) < 0.05);
    CHECK(std::fabs(lag1 / lag1_n - 0.5) < 0.02);
    CHECK(std::fabs(lag2 / lag2_n - 0.25) < 0.02);
}

TEST_CASE("conditional density: uninformative estimate reduces to the marginal") {
    for (double gamma_hat : {0.0, 1.0, 10.0, 55.0})
        for (double gamma : {0.1, 2.0, 10.0, 40.0}) {
            const double f = channel::conditional_snr_density(gamma, gamma_hat, 1.0, 10.0);
            CHECK(rel_err(f, std::exp(-gamma / 10.0) / 10.0) < 1e-13);
        }
    // the printed variant keeps an estimate dependence there
    const double p1 = channel::conditional_snr_density(5.0, 2.0, 1.0, 10.0, channel::DensityForm::printed);
    const double p2 = channel::conditional_snr_density(5.0, 9.0, 1.0, 10.0, channel::DensityForm::printed);
    CHECK(p1 != p2);

    CHECK_THROWS_AS(channel::conditional_snr_density(1.0, 1.0, 0.0, 10.0), std::domain_error);
}

TEST_CASE("conditional density normalization and conditional mean") {
    const numerics::QuadratureSpec spec;
    for (double mean_snr : {1.0, 10.0})
        for (double nmse : {0.05, 0.3, 0.9, 1.0})
            for (double gamma_hat : {0.3, 2.0, 10.0, 40.0}) {
                const auto density = [&](double g) {
                    return channel::conditional_snr_density(g, gamma_hat, nmse, mean_snr);
                };
                const double mass = numerics::integrate_semi_infinite(density, spec);
                CHECK(std::fabs(mass - 1.0) < 1e-6);

                const auto weighted = [&](double g) { return g * density(g); };
                const double m1 = numerics::integrate_semi_infinite(weighted, spec);
                const double want = (1.0 - nmse) * gamma_hat + nmse * mean_snr;
                CHECK(std::fabs(m1 - want) < 1e-6 * mean_snr);
            }

    // sharply informative estimate needs a placement hint, like any caller
    // with localized structure
    const double gamma_hat = 25.0, nmse = 1e-3, mean_snr = 10.0;
    const auto density = [&](double g) {
        return channel::conditional_snr_density(g, gamma_hat, nmse, mean_snr);
    };
    const double center = (1.0 - nmse) * gamma_hat + nmse * mean_snr;
    const double hints[3] = {center - 1.0, center, center + 1.0};
    CHECK(std::fabs(numerics::integrate_semi_infinite(density, spec, hints) - 1.0) < 1e-6);

    // the printed form integrates to one as well; only its moments are off
    const auto printed = [&](double g) {
        return channel::conditional_snr_density(g, 10.0, 0.4, 10.0, channel::DensityForm::printed);
    };
    CHECK(std::fabs(numerics::integrate_semi_infinite(printed, spec) - 1.0) < 1e-6);
}

TEST_CASE("observe_with_mismatch limits") {
    channel::LinkGainField dims;
    dims.snr = channel::Matrix(400, 250);
    dims.snr_estimate = channel::Matrix(400, 250);
    dims.coherence_slots = 1;

    SUBCASE("near-perfect estimation tracks the truth") {
        RandomStream rng(21);
        const auto f = channel::observe_with_mismatch(dims, {1e-6, 10.0}, rng);
        long off = 0;
        for (std::size_t i = 0; i < f.snr.v.size(); ++i)
            off += std::fabs(f.snr.v[i] - f.snr_estimate.v[i]) >
                   0.05 * std::max(f.snr.v[i], 1e-12);
        CHECK(static_cast<double>(off) / f.snr.v.size() < 0.01);
    }

    SUBCASE("uninformative estimation is uncorrelated") {
        RandomStream rng(22);
        const auto f = channel::observe_with_mismatch(dims, {1.0, 10.0}, rng);
        const std::size_t n = f.snr.v.size();
        double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += f.snr.v[i];
            my += f.snr_estimate.v[i];
        }
        mx /= n;
        my /= n;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = f.snr.v[i] - mx, dy = f.snr_estimate.v[i] - my;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
        CHECK(std::fabs(sxy / std::sqrt(sxx * syy)) < 0.01);
    }
}

TEST_CASE("observe_with_mismatch matches the conditional law (KS test)") {
    // Collect draws of the true SNR whose estimate landed in a narrow bin,
    // and compare against the analytic conditional law at the bin center via
    // the Marcum tail formula.
    const double nmse = 0.3, mean_snr = 10.0;
    const double scale = mean_snr * nmse;
    const double ncp = (1.0 - nmse) * 10.0;  // bin center estimate

    channel::LinkGainField dims;
    dims.snr = channel::Matrix(64, 64);
    dims.snr_estimate = channel::Matrix(64, 64);
    RandomStream rng(23);

    std::vector<double> samples;
    while (samples.size() < 10000) {
        const auto f = channel::observe_with_mismatch(dims, {nmse, mean_snr}, rng);
        for (std::size_t i = 0; i < f.snr.v.size() && samples.size() < 10000; ++i)
            if (f.snr_estimate.v[i] >= 9.5 && f.snr_estimate.v[i] <= 10.5)
                samples.push_back(f.snr.v[i]);
    }
    std::sort(samples.begin(), samples.end());
    const auto cdf = [&](double g) {
        return 1.0 - numerics::marcum_q(1, std::sqrt(2.0 * ncp / scale), std::sqrt(2.0 * g / scale));
    };
    double ks = 0.0;
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        ks = std::max(ks, std::fabs(F - (i + 1) / n));
        ks = std::max(ks, std::fabs(F - i / n));
    }
    CHECK(ks < 1.628 / std::sqrt(n));  // 1% critical value
}

TEST_CASE("block fading: estimates share the field inside a block") {
    RandomStream rng1(33), rng2(33);
    const auto f1 = channel::rayleigh_block_field(10.0, 3, 4, rng1, 20);
    const auto f2 = channel::rayleigh_block_field(10.0, 3, 4, rng2, 20);
    CHECK(f1.snr.v == f2.snr.v);  // same stream state, same block
    const auto f3 = channel::rayleigh_block_field(10.0, 3, 4, rng1, 20);
    CHECK(f1.snr.v != f3.snr.v);  // next block is fresh
    CHECK(f1.coherence_slots == 20);
}
