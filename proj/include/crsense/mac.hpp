#pragma once

#include <cstdint>
#include <vector>

#include "crsense/errors.hpp"
#include "crsense/pu_traffic.hpp"
#include "crsense/rng.hpp"

namespace crsense::mac {

enum class SuResult : std::uint8_t { transmitted, lost_contention, slept, collided_with_pu };

/// Per channel, the SUs that sensed it and observed idle this slot. Each SU
/// may appear on at most one channel (one sensor per SU).
struct SlotClaims {
    int su_count = 0;
    std::vector<std::vector<int>> per_channel;

    void reset(int su_total, int channel_count);
};

struct SlotOutcome {
    std::vector<SuResult> su;                 // per SU; sleepers by default
    std::vector<std::uint8_t> pu_disrupted;   // per channel
};

/// Contention resolution: on a truly idle claimed channel one uniformly
/// chosen claimant transmits and the rest lose; on a truly busy claimed
/// channel (miss detections) every claimant collides with the PU and the
/// PU slot is disrupted. Channels are processed in index order.
SlotOutcome resolve_contention(const SlotClaims& claims,
                               const pu_traffic::OccupancyState& true_states,
                               RandomStream& rng);

/// Buffer-reusing form for the slot loop.
void resolve_contention_into(const SlotClaims& claims,
                             const pu_traffic::OccupancyState& true_states,
                             RandomStream& rng, SlotOutcome& out);

}  // namespace crsense::mac
