#include "crsense/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace crsense::numerics {

namespace {

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

void require_finite_nonneg(double x, const char* what) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(what) + " must be finite and nonnegative");
}

// Power series sum_k (x^2/4)^k / (k!)^2. All terms positive, no cancellation;
// safe up to where I0 itself overflows.
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 1200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// Large-argument expansion of e^{-x} I0(x); the terms fall below machine
// epsilon well before the series turns divergent for x >= 40.
double i0_scaled_asymptotic(double x) {
    const double inv8x = 1.0 / (8.0 * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd * inv8x / k;
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i0(double x) {
    require_finite_nonneg(x, "bessel_i0 argument");
    if (x < 40.0) return i0_series(x);
    return i0_scaled_asymptotic(x) * std::exp(x);
}

double bessel_i0_scaled(double x) {
    require_finite_nonneg(x, "bessel_i0_scaled argument");
    if (x < 40.0) return i0_series(x) * std::exp(-x);
    return i0_scaled_asymptotic(x);
}

double gamma_upper_regularized(double nu, double x) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw std::domain_error("gamma_upper_regularized: nu must be positive");
    require_finite_nonneg(x, "gamma_upper_regularized argument");
    if (x == 0.0) return 1.0;

    const double logpre = -x + nu * std::log(x) - std::lgamma(nu);
    double q;
    if (x < nu + 1.0) {
        // Lower series, then complement.
        double ap = nu, term = 1.0 / nu, sum = term;
        for (int k = 0; k < 10000; ++k) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (term < sum * 1e-16) break;
        }
        q = 1.0 - sum * std::exp(logpre);
    } else {
        // Upper continued fraction, modified Lentz.
        constexpr double tiny = 1e-300;
        double b = x + 1.0 - nu, c = 1.0 / tiny, d = 1.0 / b, h = d;
        for (int i = 1; i < 10000; ++i) {
            const double an = -static_cast<double>(i) * (i - nu);
            b += 2.0;
            d = an * d + b;
            if (std::fabs(d) < tiny) d = tiny;
            c = b + an / c;
            if (std::fabs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double del = d * c;
            h *= del;
            if (std::fabs(del - 1.0) < 1e-16) break;
        }
        q = h * std::exp(logpre);
    }
    return clamp01(q);
}

double marcum_q(int order, double a, double b) {
    if (order < 1) throw std::domain_error("marcum_q: order must be a positive integer");
    require_finite_nonneg(a, "marcum_q first argument");
    require_finite_nonneg(b, "marcum_q second argument");
    if (b == 0.0) return 1.0;

    const double s = 0.5 * a * a;  // Poisson mean of the mixing weights
    const double x = 0.5 * b * b;
    if (s == 0.0) return gamma_upper_regularized(static_cast<double>(order), x);

    // Expand around the bulk of the Poisson weights at k0 = floor(s) and walk
    // outward in both directions. g(k) = Q(order + k, x) advances by the
    // stable recurrence Q(c+1, x) = Q(c, x) + x^c e^{-x} / Gamma(c+1).
    const long k0 = static_cast<long>(s);
    const double w0 = std::exp(-s + (k0 > 0 ? k0 * std::log(s) : 0.0) - std::lgamma(static_cast<double>(k0) + 1.0));
    const double g0 = gamma_upper_regularized(static_cast<double>(order + k0), x);
    const double t0 = std::exp((order + k0) * std::log(x) - x - std::lgamma(static_cast<double>(order + k0) + 1.0));

    double sum = w0 * g0;
    double wsum = w0;

    // downward: k = k0-1 .. 0
    {
        double w = w0, g = g0, t = t0;
        for (long k = k0 - 1; k >= 0; --k) {
            w *= static_cast<double>(k + 1) / s;
            t *= static_cast<double>(order + k + 1) / x;  // now x^{order+k} e^{-x}/Gamma(order+k+1)
            g = clamp01(g - t);
            sum += w * g;
            wsum += w;
            if (w < 1e-18 * w0) break;
        }
    }
    // upward: k = k0+1 .. until the remaining Poisson mass is negligible
    {
        double w = w0, g = g0, t = t0;
        for (long k = k0 + 1; k < k0 + 2000000L; ++k) {
            w *= s / static_cast<double>(k);
            g = clamp01(g + t);
            t *= x / static_cast<double>(order + k);
            sum += w * g;
            wsum += w;
            if (1.0 - wsum < 1e-13 || (w < 1e-18 * w0 && k > k0 + 4)) break;
        }
    }
    return clamp01(sum);
}

void QuadratureSpec::validate() const {
    if (!(relative_tolerance > 0.0) || !(relative_tolerance < 1e-2))
        throw config_error("QuadratureSpec.relative_tolerance must lie in (0, 1e-2)");
    if (max_subdivisions < 16)
        throw config_error("QuadratureSpec.max_subdivisions must be at least 16");
}

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    double estimate, error;
};

template <typename G>
Panel eval_panel(const G& g, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const double fc = g(c);
    double resk = fc * kKronrodWeights[7];
    double resg = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        const double f1 = g(c - dx), f2 = g(c + dx);
        resk += kKronrodWeights[j] * (f1 + f2);
        if (j % 2 == 1) resg += kGaussWeights[j / 2] * (f1 + f2);
    }
    return Panel{lo, hi, resk * h, std::fabs((resk - resg) * h)};
}

}  // namespace

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec,
                               std::span<const double> breakpoints) {
    spec.validate();

    // x = t/(1-t) maps [0, inf) onto [0, 1); dx = dt/(1-t)^2. The Kronrod
    // nodes are strictly interior, so t = 1 is never evaluated.
    const auto g = [&f](double t) {
        const double omt = 1.0 - t;
        return f(t / omt) / (omt * omt);
    };

    // Geometric ladder of initial boundaries so that structure at any scale
    // from ~1e-6 up meets a panel small enough to register in its error
    // estimate; breakpoints get a local cluster for the same reason.
    std::vector<double> knots{0.0, 1.0};
    const auto push_x = [&knots](double x) {
        if (x > 0.0 && std::isfinite(x)) knots.push_back(x / (1.0 + x));
    };
    for (double x = 0x1.0p-20; x <= 600.0; x *= 2.0) push_x(x);
    for (double b : breakpoints)
        for (double f : {0.25, 0.5, 1.0, 2.0, 4.0}) push_x(b * f);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [](double u, double v) { return v - u < 1e-12; }),
                knots.end());

    const auto worse = [](const Panel& p, const Panel& q) { return p.error < q.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);
    std::vector<Panel> frozen;  // panels too narrow to split further

    double total = 0.0, errsum = 0.0;
    int panel_count = 0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        Panel p = eval_panel(g, knots[i], knots[i + 1]);
        total += p.estimate;
        errsum += p.error;
        queue.push(p);
        ++panel_count;
    }

    // Exact re-summation over all panels; the incremental running sums are
    // only used to steer refinement.
    const auto resum = [&]() {
        double t = 0.0;
        for (const Panel& p : frozen) t += p.estimate;
        std::vector<Panel> live;
        live.reserve(queue.size());
        while (!queue.empty()) {
            live.push_back(queue.top());
            queue.pop();
        }
        for (const Panel& p : live) {
            t += p.estimate;
            queue.push(p);
        }
        return t;
    };

    while (true) {
        const double bound = spec.relative_tolerance * std::max(std::fabs(total), 1e-300);
        if (errsum <= bound || queue.empty()) return resum();
        if (panel_count >= spec.max_subdivisions)
            throw convergence_error("integrate_semi_infinite: subdivision budget exhausted",
                                    resum(), panel_count);
        Panel w = queue.top();
        queue.pop();
        const double mid = 0.5 * (w.lo + w.hi);
        if (mid <= w.lo || mid >= w.hi) {
            frozen.push_back(w);  // cannot split in floating point
            errsum -= w.error;
            continue;
        }
        const Panel left = eval_panel(g, w.lo, mid);
        const Panel right = eval_panel(g, mid, w.hi);
        total += left.estimate + right.estimate - w.estimate;
        errsum += left.error + right.error - w.error;
        queue.push(left);
        queue.push(right);
        ++panel_count;
    }
}

}  // namespace crsense::numerics
