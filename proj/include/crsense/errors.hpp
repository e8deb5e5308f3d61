#pragma once

#include <stdexcept>
#include <string>

namespace crsense {

/// Invalid scenario or module configuration (bad key, violated invariant).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Adaptive quadrature (or an iteration built on it) ran out of subdivisions.
/// Carries the best estimate obtained so far.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& msg, double best_estimate, int subdivisions)
        : std::runtime_error(msg), best_estimate_(best_estimate), subdivisions_(subdivisions) {}

    double best_estimate() const noexcept { return best_estimate_; }
    int subdivisions() const noexcept { return subdivisions_; }

private:
    double best_estimate_;
    int subdivisions_;
};

/// A caller broke an inter-module contract (e.g. malformed MAC claims).
class contract_violation : public std::logic_error {
public:
    explicit contract_violation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace crsense
