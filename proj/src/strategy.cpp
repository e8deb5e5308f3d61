#include "crsense/strategy.hpp"

#include <algorithm>
#include <vector>

namespace crsense::strategy {

const char* to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Random: return "random";
        case StrategyKind::Myopic: return "myopic";
        case StrategyKind::RandomizedMyopic: return "randomized_myopic";
        case StrategyKind::MyopicCA: return "myopic_ca";
        case StrategyKind::CsiAided: return "csi_aided";
    }
    return "?";
}

StrategyKind strategy_from_string(const std::string& name) {
    if (name == "random") return StrategyKind::Random;
    if (name == "myopic") return StrategyKind::Myopic;
    if (name == "randomized_myopic") return StrategyKind::RandomizedMyopic;
    if (name == "myopic_ca") return StrategyKind::MyopicCA;
    if (name == "csi_aided") return StrategyKind::CsiAided;
    throw config_error("unknown strategy kind: " + name);
}

namespace {

int argmax_uniform_ties(std::span<const double> belief, std::span<const double> rew,
                        RandomStream& rng) {
    const int n_ch = static_cast<int>(belief.size());
    double best = expected_reward(belief[0], rew[0]);
    for (int n = 1; n < n_ch; ++n)
        best = std::max(best, expected_reward(belief[n], rew[n]));

    static thread_local std::vector<int> ties;
    ties.clear();
    for (int n = 0; n < n_ch; ++n)
        if (expected_reward(belief[n], rew[n]) == best) ties.push_back(n);
    if (ties.size() == 1) return ties[0];
    return ties[rng.uniform_int(static_cast<int>(ties.size()))];
}

}  // namespace

int select_channel(StrategyKind kind, const SuContext& ctx, int ca_top_l, RandomStream& rng) {
    const int n_ch = static_cast<int>(ctx.belief.size());
    if (n_ch < 1) throw config_error("select_channel: empty channel set");
    if (ctx.reward_per_channel.size() != ctx.belief.size() && kind != StrategyKind::Random)
        throw config_error("select_channel: reward and belief sizes differ");

    switch (kind) {
        case StrategyKind::Random:
            return rng.uniform_int(n_ch);

        case StrategyKind::Myopic:
        case StrategyKind::CsiAided:
            return argmax_uniform_ties(ctx.belief, ctx.reward_per_channel, rng);

        case StrategyKind::RandomizedMyopic: {
            double total = 0.0;
            for (int n = 0; n < n_ch; ++n)
                total += expected_reward(ctx.belief[n], ctx.reward_per_channel[n]);
            if (!(total > 0.0)) return rng.uniform_int(n_ch);
            double u = rng.uniform01() * total;
            for (int n = 0; n < n_ch; ++n) {
                u -= expected_reward(ctx.belief[n], ctx.reward_per_channel[n]);
                if (u <= 0.0) return n;
            }
            return n_ch - 1;  // rounding spill
        }

        case StrategyKind::MyopicCA: {
            if (!ctx.last_slot_collided)
                return argmax_uniform_ties(ctx.belief, ctx.reward_per_channel, rng);
            if (ca_top_l < 1) throw config_error("select_channel: myopic_ca needs ca_top_l >= 1");
            static thread_local std::vector<int> order;
            order.clear();
            for (int n = 0; n < n_ch; ++n)
                if (n != ctx.last_slot_channel) order.push_back(n);
            if (order.empty()) return ctx.last_slot_channel;  // single-channel network
            std::sort(order.begin(), order.end(), [&](int i, int j) {
                const double vi = expected_reward(ctx.belief[i], ctx.reward_per_channel[i]);
                const double vj = expected_reward(ctx.belief[j], ctx.reward_per_channel[j]);
                if (vi != vj) return vi > vj;
                return i < j;
            });
            const int top = std::min<int>(ca_top_l, static_cast<int>(order.size()));
            return order[rng.uniform_int(top)];
        }
    }
    throw std::logic_error("select_channel: unknown strategy kind");
}

}  // namespace crsense::strategy
