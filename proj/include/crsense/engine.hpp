#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crsense/mac.hpp"
#include "crsense/pu_traffic.hpp"
#include "crsense/scenario.hpp"

namespace crsense::engine {

/// Everything that happened in one slot: per-SU decisions and results plus
/// the true channel states and the delivered reward totals.
struct SlotRecord {
    std::vector<int> chosen;                           // per SU
    std::vector<pu_traffic::ChannelState> observed;    // per SU
    std::vector<mac::SuResult> result;                 // per SU
    std::vector<double> delivered;                     // per SU
    std::vector<pu_traffic::ChannelState> true_states; // per channel
    double su_reward_total = 0.0;
    double pu_reward_total = 0.0;
};

/// Deterministic seed for one replication of a scenario.
std::uint64_t replication_seed(std::uint64_t master_seed, int replication_index);

/// One full episode. Deterministic given (config, replication_seed).
std::vector<SlotRecord> run_episode(const config::ScenarioConfig& cfg,
                                    std::uint64_t rep_seed);

/// Trailing-window average of the per-slot network reward, normalized by the
/// SU count. window = 0 gives the cumulative running average; otherwise the
/// window is truncated to the available history at early slots.
std::vector<double> metric_avg_normalized_throughput(std::span<const SlotRecord> records,
                                                     int window, int su_count);

/// (total SU reward + total PU reward) / (slots * channels).
double metric_overall_spectral_efficiency(std::span<const SlotRecord> records,
                                          int channel_count);

struct MetricsSeries {
    std::vector<double> throughput_mean;    // per slot, across replications
    std::vector<double> throughput_stderr;
    double spectral_efficiency_mean = 0.0;
    double spectral_efficiency_stderr = 0.0;
    int slots = 0;
    int replications = 0;
    std::uint64_t seed = 0;
};

/// Runs cfg.replications independent episodes (in parallel up to max_threads;
/// 0 picks the hardware count) and aggregates per-slot mean and standard
/// error. Output is identical for any thread count.
MetricsSeries run_monte_carlo(const config::ScenarioConfig& cfg, int max_threads = 0);

}  // namespace crsense::engine
