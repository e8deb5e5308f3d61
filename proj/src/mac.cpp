#include "crsense/mac.hpp"

namespace crsense::mac {

void SlotClaims::reset(int su_total, int channel_count) {
    su_count = su_total;
    per_channel.resize(channel_count);
    for (auto& c : per_channel) c.clear();
}

void resolve_contention_into(const SlotClaims& claims,
                             const pu_traffic::OccupancyState& true_states,
                             RandomStream& rng, SlotOutcome& out) {
    const int n_ch = static_cast<int>(claims.per_channel.size());
    if (static_cast<int>(true_states.states.size()) != n_ch)
        throw contract_violation("resolve_contention: claims and state channel counts differ");

    out.su.assign(claims.su_count, SuResult::slept);
    out.pu_disrupted.assign(n_ch, 0);

    static thread_local std::vector<std::uint8_t> seen;
    seen.assign(claims.su_count, 0);

    for (int n = 0; n < n_ch; ++n) {
        const auto& claimants = claims.per_channel[n];
        if (claimants.empty()) continue;
        for (int m : claimants) {
            if (m < 0 || m >= claims.su_count)
                throw contract_violation("resolve_contention: SU index out of range");
            if (seen[m]) throw contract_violation("resolve_contention: SU claims more than one channel");
            seen[m] = 1;
        }
        if (true_states.states[n] == pu_traffic::ChannelState::idle) {
            const int k = static_cast<int>(claimants.size());
            const int winner = k == 1 ? claimants[0] : claimants[rng.uniform_int(k)];
            for (int m : claimants)
                out.su[m] = m == winner ? SuResult::transmitted : SuResult::lost_contention;
        } else {
            for (int m : claimants) out.su[m] = SuResult::collided_with_pu;
            out.pu_disrupted[n] = 1;
        }
    }
}

SlotOutcome resolve_contention(const SlotClaims& claims,
                               const pu_traffic::OccupancyState& true_states,
                               RandomStream& rng) {
    SlotOutcome out;
    resolve_contention_into(claims, true_states, rng, out);
    return out;
}

}  // namespace crsense::mac
