#pragma once

#include <span>
#include <string>

#include "crsense/errors.hpp"
#include "crsense/rng.hpp"

namespace crsense::strategy {

enum class StrategyKind { Random, Myopic, RandomizedMyopic, MyopicCA, CsiAided };

const char* to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string& name);  // throws config_error

/// Everything one SU knows when it picks a channel to sense.
struct SuContext {
    std::span<const double> belief;              // per-channel idle probability
    std::span<const double> reward_per_channel;  // selection reward
    bool last_slot_collided = false;             // lost contention last slot
    int last_slot_channel = -1;                  // -1: none
};

/// One-slot expected reward of sensing a channel.
inline double expected_reward(double theta_n, double reward_n) { return theta_n * reward_n; }

/// Channel choice for one SU this slot.
///  - Random: uniform over all channels.
///  - Myopic, CsiAided: argmax of expected reward, ties broken uniformly at
///    random from the SU's own stream. The two differ only in which rewards
///    the caller supplies (fixed bandwidth vs CSI-dependent).
///  - RandomizedMyopic: sense channel n with probability proportional to its
///    expected reward; uniform fallback when all rewards are zero.
///  - MyopicCA: argmax as Myopic until a collision; the slot after one,
///    uniform over the ca_top_l best channels excluding the collided one.
int select_channel(StrategyKind kind, const SuContext& ctx, int ca_top_l, RandomStream& rng);

}  // namespace crsense::strategy
