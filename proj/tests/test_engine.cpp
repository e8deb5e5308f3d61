#include <doctest.h>

#include <cmath>
#include <set>

#include "crsense/engine.hpp"

using namespace crsense;
using mac::SuResult;
using pu_traffic::ChannelState;

namespace {

config::ScenarioConfig smoke_config() {
    config::ScenarioConfig cfg;
    cfg.su_count = 4;
    cfg.channel_count = 6;
    cfg.horizon = 40;
    cfg.replications = 8;
    cfg.seed = 7;
    cfg.fading.coherence_slots = 5;
    cfg.strategy.kind = strategy::StrategyKind::CsiAided;
    return cfg;
}

bool records_equal(const std::vector<engine::SlotRecord>& a,
                   const std::vector<engine::SlotRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t].chosen != b[t].chosen || a[t].observed != b[t].observed ||
            a[t].result != b[t].result || a[t].delivered != b[t].delivered ||
            a[t].true_states != b[t].true_states ||
            a[t].su_reward_total != b[t].su_reward_total ||
            a[t].pu_reward_total != b[t].pu_reward_total)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("single SU on an always-idle channel transmits every slot") {
    config::ScenarioConfig cfg;
    cfg.su_count = 1;
    cfg.channel_count = 1;
    cfg.horizon = 50;
    cfg.replications = 1;
    cfg.pu = {0.0, 1.0, 0.0, 1.0};  // idle absorbing, stationary idle probability 1
    cfg.fading.coherence_slots = 10;
    cfg.strategy.kind = strategy::StrategyKind::CsiAided;

    const auto records = engine::run_episode(cfg, 123);
    REQUIRE(records.size() == 50);
    for (const auto& r : records) {
        CHECK(r.true_states[0] == ChannelState::idle);
        CHECK(r.result[0] == SuResult::transmitted);
        CHECK(r.delivered[0] > 0.0);
        CHECK(r.su_reward_total == r.delivered[0]);
        CHECK(r.pu_reward_total == 0.0);
    }

    SUBCASE("delivered rewards are constant within a coherence block") {
        std::set<double> block_values;
        for (int block = 0; block < 5; ++block) {
            const double v = records[block * 10].delivered[0];
            for (int i = 1; i < 10; ++i) CHECK(records[block * 10 + i].delivered[0] == v);
            block_values.insert(v);
        }
        CHECK(block_values.size() == 5);  // fresh draw per block
    }
}

TEST_CASE("never-idle channels produce zero throughput and full PU reward") {
    config::ScenarioConfig cfg;
    cfg.su_count = 2;
    cfg.channel_count = 3;
    cfg.horizon = 30;
    cfg.replications = 1;
    cfg.pu = {1.0, 0.0, 1.0, 0.0};  // busy absorbing and stationary
    cfg.strategy.kind = strategy::StrategyKind::Myopic;
    cfg.metrics.pu_nominal_snr_db = 10.0;

    const auto records = engine::run_episode(cfg, 9);
    const double per_channel = std::log2(11.0);
    for (const auto& r : records) {
        CHECK(r.su_reward_total == 0.0);
        for (int m = 0; m < 2; ++m) CHECK(r.result[m] == SuResult::slept);
        CHECK(r.pu_reward_total == doctest::Approx(3 * per_channel).epsilon(1e-12));
    }
    CHECK(engine::metric_overall_spectral_efficiency(records, 3) ==
          doctest::Approx(per_channel).epsilon(1e-12));
}

TEST_CASE("episodes are bit-identical under the same seed") {
    const auto cfg = smoke_config();
    const auto a = engine::run_episode(cfg, 555);
    const auto b = engine::run_episode(cfg, 555);
    CHECK(records_equal(a, b));
    const auto c = engine::run_episode(cfg, 556);
    CHECK(!records_equal(a, c));
}

TEST_CASE("perfect sensing never collides with the PU") {
    auto cfg = smoke_config();
    cfg.horizon = 60;
    const auto records = engine::run_episode(cfg, 17);
    for (const auto& r : records)
        for (int m = 0; m < cfg.su_count; ++m) CHECK(r.result[m] != SuResult::collided_with_pu);
}

TEST_CASE("throughput metric fixtures") {
    std::vector<engine::SlotRecord> records(3);
    records[0].su_reward_total = 2.0;
    records[1].su_reward_total = 4.0;
    records[2].su_reward_total = 6.0;

    const auto cumulative = engine::metric_avg_normalized_throughput(records, 0, 2);
    CHECK(cumulative[0] == doctest::Approx(1.0));
    CHECK(cumulative[1] == doctest::Approx(1.5));
    CHECK(cumulative[2] == doctest::Approx(2.0));

    const auto windowed = engine::metric_avg_normalized_throughput(records, 2, 2);
    CHECK(windowed[0] == doctest::Approx(1.0));
    CHECK(windowed[1] == doctest::Approx(1.5));
    CHECK(windowed[2] == doctest::Approx(2.5));

    CHECK(engine::metric_avg_normalized_throughput({}, 0, 2).empty());
}

TEST_CASE("monte carlo aggregation basics") {
    auto cfg = smoke_config();
    cfg.replications = 1;
    const auto one = engine::run_monte_carlo(cfg);
    CHECK(one.replications == 1);
    for (double se : one.throughput_stderr) CHECK(se == 0.0);
    CHECK(one.spectral_efficiency_stderr == 0.0);

    const auto episode = engine::run_episode(cfg, engine::replication_seed(cfg.seed, 0));
    const auto series = engine::metric_avg_normalized_throughput(episode, 0, cfg.su_count);
    for (int t = 0; t < cfg.horizon; ++t) CHECK(one.throughput_mean[t] == series[t]);
}

TEST_CASE("monte carlo output is independent of the worker count") {
    const auto cfg = smoke_config();
    const auto a = engine::run_monte_carlo(cfg, 1);
    const auto b = engine::run_monte_carlo(cfg, 2);
    const auto c = engine::run_monte_carlo(cfg, 8);
    CHECK(a.throughput_mean == b.throughput_mean);
    CHECK(a.throughput_stderr == b.throughput_stderr);
    CHECK(b.throughput_mean == c.throughput_mean);
    CHECK(a.spectral_efficiency_mean == c.spectral_efficiency_mean);
}

TEST_CASE("standard errors shrink like the square root of the replication count") {
    auto cfg = smoke_config();
    cfg.horizon = 50;
    cfg.replications = 200;
    const auto small = engine::run_monte_carlo(cfg);
    cfg.replications = 400;
    const auto large = engine::run_monte_carlo(cfg);
    const double ratio = large.throughput_stderr.back() / small.throughput_stderr.back();
    CHECK(ratio > 0.8 / std::sqrt(2.0));
    CHECK(ratio < 1.2 / std::sqrt(2.0));
}

TEST_CASE("channel-aware selection with fixed-bandwidth rewards degenerates to myopic") {
    auto cfg = smoke_config();
    cfg.su_count = 5;
    cfg.channel_count = 8;
    cfg.horizon = 100;
    cfg.replications = 20;
    cfg.reward.kind = reward::RewardKind::conventional;

    cfg.strategy.kind = strategy::StrategyKind::CsiAided;
    const auto csi = engine::run_monte_carlo(cfg);
    cfg.strategy.kind = strategy::StrategyKind::Myopic;
    const auto myopic = engine::run_monte_carlo(cfg);

    CHECK(csi.throughput_mean == myopic.throughput_mean);  // exact, common random numbers
    CHECK(csi.throughput_stderr == myopic.throughput_stderr);
}

TEST_CASE("fully mismatched CSI collapses channel-aware selection onto myopic") {
    config::ScenarioConfig cfg;
    cfg.su_count = 3;
    cfg.channel_count = 10;
    cfg.horizon = 20;
    cfg.replications = 25;
    cfg.seed = 4;
    cfg.fading.coherence_slots = 20;
    cfg.mismatch.enabled = true;
    cfg.mismatch.nmse = 1.0;
    cfg.reward.kind = reward::RewardKind::capacity;

    cfg.strategy.kind = strategy::StrategyKind::CsiAided;
    const auto csi = engine::run_monte_carlo(cfg);
    cfg.strategy.kind = strategy::StrategyKind::Myopic;
    const auto myopic = engine::run_monte_carlo(cfg);
    CHECK(csi.throughput_mean == myopic.throughput_mean);  // exact, common random numbers
}

TEST_CASE("noisy sensing with a perfect detector matches perfect sensing") {
    // a detector profile with p_m = p_f = 0 cannot come out of calibration,
    // so this equivalence is exercised at the belief level in the traffic
    // module tests; here we check the sensing path against a tiny-error
    // profile statistically
    auto cfg = smoke_config();
    cfg.horizon = 60;
    cfg.replications = 40;
    const auto perfect = engine::run_monte_carlo(cfg);

    auto noisy_cfg = cfg;
    noisy_cfg.detector.enabled = true;
    noisy_cfg.detector.nu = 5;
    noisy_cfg.detector.target_pm = 0.01;
    noisy_cfg.detector.pu_mean_snr_db = 30.0;  // strong signal: tiny p_f at this p_m
    const auto noisy = engine::run_monte_carlo(noisy_cfg);
    // same order of magnitude; the noisy run must not be degenerate
    CHECK(noisy.throughput_mean.back() > 0.25 * perfect.throughput_mean.back());

    SUBCASE("miss detections do collide with the PU") {
        auto heavy = noisy_cfg;
        heavy.detector.target_pm = 0.5;
        heavy.replications = 5;
        const auto records = engine::run_episode(heavy, engine::replication_seed(heavy.seed, 1));
        long collisions = 0;
        for (const auto& r : records)
            for (int m = 0; m < heavy.su_count; ++m)
                collisions += r.result[m] == SuResult::collided_with_pu;
        CHECK(collisions > 0);
    }
}

TEST_CASE("per-slot reward never exceeds the best idle-channel bound") {
    auto cfg = smoke_config();
    cfg.horizon = 80;
    const auto records = engine::run_episode(cfg, 31);
    for (const auto& r : records) {
        double delivered = 0.0;
        for (double d : r.delivered) delivered += d;
        CHECK(delivered == doctest::Approx(r.su_reward_total));
        int idle = 0;
        for (auto s : r.true_states) idle += s == ChannelState::idle;
        // with unit bandwidth each transmission is at most log2(1 + max snr);
        // bound loosely using the idle-channel count and a generous cap
        CHECK(r.su_reward_total <= idle * 30.0);
    }
}

TEST_CASE("invalid configurations are rejected") {
    auto cfg = smoke_config();
    cfg.pu.p01 = 0.4;  // row sum
    CHECK_THROWS_AS(engine::run_monte_carlo(cfg), config_error);

    auto cfg2 = smoke_config();
    cfg2.mismatch.enabled = true;
    cfg2.mismatch.nmse = 0.0;
    CHECK_THROWS_AS(engine::run_episode(cfg2, 1), config_error);
}

TEST_CASE("replication seeds are distinct") {
    std::set<std::uint64_t> seen;
    for (int rep = 0; rep < 512; ++rep) seen.insert(engine::replication_seed(42, rep));
    CHECK(seen.size() == 512);
}
