#include "crsense/pu_traffic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crsense::pu_traffic {

void TransitionMatrix::validate() const {
    for (double p : {p00, p01, p10, p11})
        if (!(p >= 0.0 && p <= 1.0))
            throw config_error("transition probabilities must lie in [0,1]");
    if (std::fabs(p00 + p01 - 1.0) > 1e-12)
        throw config_error("transition matrix busy row must sum to 1");
    if (std::fabs(p10 + p11 - 1.0) > 1e-12)
        throw config_error("transition matrix idle row must sum to 1");
}

double stationary_idle_probability(const TransitionMatrix& P) {
    P.validate();
    const double denom = P.p01 + P.p10;
    if (denom <= 0.0)
        throw config_error("degenerate chain: p01 + p10 must be positive");
    return P.p01 / denom;
}

OccupancyState draw_stationary(std::span<const TransitionMatrix> P, RandomStream& rng) {
    OccupancyState s;
    s.states.reserve(P.size());
    for (const TransitionMatrix& pn : P) {
        const double pi1 = stationary_idle_probability(pn);
        s.states.push_back(rng.uniform01() < pi1 ? ChannelState::idle : ChannelState::busy);
    }
    return s;
}

OccupancyState evolve(const OccupancyState& state, std::span<const TransitionMatrix> P,
                      RandomStream& rng) {
    OccupancyState next = state;
    for (std::size_t n = 0; n < next.states.size(); ++n) {
        const double to_idle =
            next.states[n] == ChannelState::idle ? P[n].p11 : P[n].p01;
        next.states[n] = rng.uniform01() < to_idle ? ChannelState::idle : ChannelState::busy;
    }
    return next;
}

namespace {

void check_obs(std::size_t n_channels, const std::optional<Observation>& obs) {
    if (obs && (obs->channel < 0 || static_cast<std::size_t>(obs->channel) >= n_channels))
        throw std::domain_error("belief update: sensed channel index out of range");
}

}  // namespace

void belief_update_perfect_inplace(std::span<double> theta,
                                   const std::optional<Observation>& obs,
                                   std::span<const TransitionMatrix> P) {
    check_obs(theta.size(), obs);
    for (std::size_t n = 0; n < theta.size(); ++n) {
        if (obs && static_cast<std::size_t>(obs->channel) == n)
            theta[n] = obs->observed == ChannelState::idle ? P[n].p11 : P[n].p01;
        else
            theta[n] = theta[n] * P[n].p11 + (1.0 - theta[n]) * P[n].p01;
    }
}

void belief_update_noisy_inplace(std::span<double> theta,
                                 const std::optional<Observation>& obs,
                                 double p_m, double p_f,
                                 std::span<const TransitionMatrix> P) {
    if (!(p_m >= 0.0 && p_m <= 1.0) || !(p_f >= 0.0 && p_f <= 1.0))
        throw std::domain_error("belief update: p_m and p_f must lie in [0,1]");
    check_obs(theta.size(), obs);
    if (obs) {
        double& th = theta[obs->channel];
        double num, denom;
        if (obs->observed == ChannelState::idle) {
            num = (1.0 - p_f) * th;
            denom = num + p_m * (1.0 - th);
        } else {
            num = p_f * th;
            denom = num + (1.0 - p_m) * (1.0 - th);
        }
        if (denom <= 0.0)
            throw std::domain_error("belief update: observation has zero probability under the sensor model");
        th = num / denom;
    }
    for (std::size_t n = 0; n < theta.size(); ++n)
        theta[n] = theta[n] * P[n].p11 + (1.0 - theta[n]) * P[n].p01;
}

BeliefVector belief_update_perfect(const BeliefVector& theta,
                                   const std::optional<Observation>& obs,
                                   std::span<const TransitionMatrix> P) {
    BeliefVector out = theta;
    belief_update_perfect_inplace(out.theta, obs, P);
    return out;
}

BeliefVector belief_update_noisy(const BeliefVector& theta,
                                 const std::optional<Observation>& obs,
                                 double p_m, double p_f,
                                 std::span<const TransitionMatrix> P) {
    BeliefVector out = theta;
    belief_update_noisy_inplace(out.theta, obs, p_m, p_f, P);
    return out;
}

}  // namespace crsense::pu_traffic
