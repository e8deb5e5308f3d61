#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crsense/errors.hpp"
#include "crsense/rng.hpp"

namespace crsense::pu_traffic {

/// Two-state occupancy chain for one channel. State 0 is busy, state 1 idle;
/// p_ij is the probability of moving from state i to state j.
struct TransitionMatrix {
    double p00 = 0.8, p01 = 0.2, p10 = 0.2, p11 = 0.8;

    void validate() const;  // entries in [0,1], rows sum to 1 within 1e-12
};

enum class ChannelState : std::uint8_t { busy = 0, idle = 1 };

struct OccupancyState {
    std::vector<ChannelState> states;  // one entry per channel
};

struct BeliefVector {
    std::vector<double> theta;  // per-channel conditional idle probability
};

/// A sensing result: which channel was sensed and what was observed.
struct Observation {
    int channel = 0;
    ChannelState observed = ChannelState::idle;
};

double stationary_idle_probability(const TransitionMatrix& P);

/// Independent stationary draw per channel; the state a fresh episode starts in.
OccupancyState draw_stationary(std::span<const TransitionMatrix> P, RandomStream& rng);

/// One Markov step per channel, consuming exactly one rng draw per channel
/// in channel order.
OccupancyState evolve(const OccupancyState& state, std::span<const TransitionMatrix> P,
                      RandomStream& rng);

/// Error-free update: the sensed channel snaps to p11 (observed idle) or p01
/// (observed busy); every other channel takes the one-step prediction.
BeliefVector belief_update_perfect(const BeliefVector& theta,
                                   const std::optional<Observation>& obs,
                                   std::span<const TransitionMatrix> P);

/// Error-aware update: Bayesian posterior on the sensed channel given the
/// sensor's miss/false-alarm rates, then the one-step prediction on every
/// channel. Reduces to the error-free update at p_m = p_f = 0.
BeliefVector belief_update_noisy(const BeliefVector& theta,
                                 const std::optional<Observation>& obs,
                                 double p_m, double p_f,
                                 std::span<const TransitionMatrix> P);

// In-place forms used by the slot loop; the value-returning functions wrap them.
void belief_update_perfect_inplace(std::span<double> theta,
                                   const std::optional<Observation>& obs,
                                   std::span<const TransitionMatrix> P);
void belief_update_noisy_inplace(std::span<double> theta,
                                 const std::optional<Observation>& obs,
                                 double p_m, double p_f,
                                 std::span<const TransitionMatrix> P);

}  // namespace crsense::pu_traffic
