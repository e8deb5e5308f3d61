#pragma once

#include <functional>
#include <span>

#include "crsense/errors.hpp"

namespace crsense::numerics {

/// Modified Bessel function of the first kind, order zero. I0(x) >= 1 and
/// increasing; overflows to +inf past x ~ 709 like exp does.
double bessel_i0(double x);

/// e^{-x} I0(x). Stays in [0, 1] for x >= 0, so products of the form
/// I0(x) e^{-y} with y >= x can be formed without overflow.
double bessel_i0_scaled(double x);

/// Regularized upper incomplete gamma Gamma(nu, x) / Gamma(nu), nu > 0, x >= 0.
double gamma_upper_regularized(double nu, double x);

/// Generalized Marcum Q-function Q_nu(a, b) for integer order nu >= 1.
/// Canonical series: sum over k of Poisson(k; a^2/2) weights times
/// gamma_upper_regularized(nu + k, b^2/2), truncated when the Poisson tail
/// bound on the remainder is negligible.
double marcum_q(int order, double a, double b);

struct QuadratureSpec {
    double relative_tolerance = 1e-8;
    int max_subdivisions = 4096;

    void validate() const;  // throws config_error
};

/// Integral of f over [0, inf) for an absolutely integrable integrand with
/// (at least) exponential tail decay. The half-line is mapped onto [0, 1)
/// by x = t/(1-t) and integrated with adaptive Gauss-Kronrod 7/15 panels.
/// Optional breakpoints mark abscissas (in x) near which the integrand has
/// localized structure; they are inserted as initial panel boundaries.
/// Throws convergence_error (carrying the best estimate) if the panel
/// budget is exhausted before the tolerance is met.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec = {},
                               std::span<const double> breakpoints = {});

}  // namespace crsense::numerics
