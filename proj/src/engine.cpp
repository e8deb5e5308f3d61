#include "crsense/engine.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "crsense/detector.hpp"

namespace crsense::engine {

namespace {

// Stream purpose tags under one replication seed.
constexpr std::uint64_t kSeedTagReplication = 0xA1;
constexpr std::uint64_t kSeedTagPu = 0xB1;
constexpr std::uint64_t kSeedTagFade = 0xB2;
constexpr std::uint64_t kSeedTagSense = 0xB3;
constexpr std::uint64_t kSeedTagMac = 0xB4;
constexpr std::uint64_t kSeedTagSu = 0xB5;

/// Immutable per-scenario state shared by all replications.
struct Prepared {
    config::ScenarioConfig cfg;
    std::vector<pu_traffic::TransitionMatrix> pu;  // per channel
    std::vector<double> bandwidth;                 // per channel
    std::vector<double> stationary;                // per channel idle probability
    double mean_snr_linear = 10.0;
    double pu_nominal_snr_linear = 10.0;
    double shadow_rho = 0.0;
    std::optional<detector::DetectorProfile> det;
    channel::MismatchModel mismatch_model;
    std::shared_ptr<const reward::MismatchedRewardTable> mismatch_table;
    reward::RewardModel reward_model;
    int ca_top_l = 1;
    bool csi_selection = false;  // strategy ranks channels by CSI-dependent reward
};

Prepared prepare(const config::ScenarioConfig& cfg) {
    config::validate_or_throw(cfg);

    Prepared p;
    p.cfg = cfg;
    p.pu.assign(cfg.channel_count,
                pu_traffic::TransitionMatrix{cfg.pu.p00, cfg.pu.p01, cfg.pu.p10, cfg.pu.p11});
    p.bandwidth.resize(cfg.channel_count);
    for (int n = 0; n < cfg.channel_count; ++n)
        p.bandwidth[n] = cfg.reward.bandwidth.size() == 1
                             ? cfg.reward.bandwidth[0]
                             : cfg.reward.bandwidth[static_cast<std::size_t>(n)];
    p.stationary.resize(cfg.channel_count);
    for (int n = 0; n < cfg.channel_count; ++n)
        p.stationary[n] = pu_traffic::stationary_idle_probability(p.pu[n]);

    p.mean_snr_linear = cfg.fading.mean_snr_linear();
    p.pu_nominal_snr_linear = std::pow(10.0, cfg.metrics.pu_nominal_snr_db / 10.0);
    if (cfg.fading.model == config::FadingModel::lognormal_corr)
        p.shadow_rho = cfg.fading.resolved_rho();

    p.reward_model.kind = cfg.reward.kind;
    p.reward_model.bandwidth = cfg.reward.bandwidth;
    p.reward_model.ber_target = cfg.reward.ber_target;

    if (cfg.detector.enabled)
        p.det = detector::calibrate_threshold(cfg.detector.nu, cfg.detector.target_pm,
                                              std::pow(10.0, cfg.detector.pu_mean_snr_db / 10.0));

    p.csi_selection = cfg.strategy.kind == strategy::StrategyKind::CsiAided &&
                      cfg.reward.kind != reward::RewardKind::conventional;
    if (cfg.mismatch.enabled) {
        p.mismatch_model = channel::MismatchModel{cfg.mismatch.nmse, p.mean_snr_linear,
                                                  cfg.mismatch.density_form};
        if (p.csi_selection) {
            numerics::QuadratureSpec spec{cfg.numerics.relative_tolerance,
                                          cfg.numerics.max_subdivisions};
            p.mismatch_table = std::make_shared<reward::MismatchedRewardTable>(
                p.mismatch_model, cfg.reward.kind, cfg.reward.ber_target, spec);
        }
    }

    p.ca_top_l = cfg.strategy.ca_top_l > 0 ? cfg.strategy.ca_top_l
                                           : std::min(cfg.su_count, cfg.channel_count);
    return p;
}

/// Collects only what run_monte_carlo aggregates.
struct MetricsSink {
    std::vector<double> su_totals;
    double su_sum = 0.0, pu_sum = 0.0;

    void begin(int slots, int su_count, int channel_count) {
        (void)su_count;
        (void)channel_count;
        su_totals.reserve(slots);
    }
    void slot(std::span<const int>, std::span<const pu_traffic::ChannelState>,
              std::span<const mac::SuResult>, std::span<const double>,
              const pu_traffic::OccupancyState&, double su_total, double pu_total) {
        su_totals.push_back(su_total);
        su_sum += su_total;
        pu_sum += pu_total;
    }
};

/// Keeps the full per-slot ledger.
struct RecordSink {
    std::vector<SlotRecord> records;

    void begin(int slots, int, int) { records.reserve(slots); }
    void slot(std::span<const int> chosen, std::span<const pu_traffic::ChannelState> observed,
              std::span<const mac::SuResult> result, std::span<const double> delivered,
              const pu_traffic::OccupancyState& occ, double su_total, double pu_total) {
        SlotRecord r;
        r.chosen.assign(chosen.begin(), chosen.end());
        r.observed.assign(observed.begin(), observed.end());
        r.result.assign(result.begin(), result.end());
        r.delivered.assign(delivered.begin(), delivered.end());
        r.true_states = occ.states;
        r.su_reward_total = su_total;
        r.pu_reward_total = pu_total;
        records.push_back(std::move(r));
    }
};

template <typename Sink>
void run_episode_core(const Prepared& prep, std::uint64_t rep_seed, Sink& sink) {
    const auto& cfg = prep.cfg;
    const int su_count = cfg.su_count;
    const int channel_count = cfg.channel_count;
    const int coherence = cfg.fading.coherence_slots;
    const auto kind = cfg.strategy.kind;

    RandomStream pu_rng(derive_seed(rep_seed, {kSeedTagPu}));
    RandomStream fade_rng(derive_seed(rep_seed, {kSeedTagFade}));
    RandomStream sense_rng(derive_seed(rep_seed, {kSeedTagSense}));
    RandomStream mac_rng(derive_seed(rep_seed, {kSeedTagMac}));
    std::vector<RandomStream> su_rng;
    su_rng.reserve(su_count);
    for (int m = 0; m < su_count; ++m)
        su_rng.emplace_back(derive_seed(rep_seed, {kSeedTagSu, static_cast<std::uint64_t>(m)}));

    pu_traffic::OccupancyState occ;
    channel::Matrix beliefs(su_count, channel_count);
    for (int m = 0; m < su_count; ++m)
        for (int n = 0; n < channel_count; ++n) beliefs(m, n) = prep.stationary[n];

    channel::LinkGainField field;
    channel::Matrix csi_rewards;  // selection rewards when they are CSI-dependent
    if (prep.csi_selection) csi_rewards = channel::Matrix(su_count, channel_count);

    std::vector<int> chosen(su_count, -1);
    std::vector<pu_traffic::ChannelState> observed(su_count, pu_traffic::ChannelState::busy);
    std::vector<double> delivered(su_count, 0.0);
    std::vector<std::uint8_t> collided(su_count, 0);
    std::vector<int> last_channel(su_count, -1);
    mac::SlotClaims claims;
    mac::SlotOutcome outcome;

    sink.begin(cfg.horizon, su_count, channel_count);

    for (int t = 0; t < cfg.horizon; ++t) {
        occ = t == 0 ? pu_traffic::draw_stationary(prep.pu, pu_rng)
                     : pu_traffic::evolve(occ, prep.pu, pu_rng);

        if (t % coherence == 0) {
            if (cfg.fading.model == config::FadingModel::lognormal_corr)
                field = channel::lognormal_shadow_field(prep.shadow_rho, cfg.fading.mean_snr_db,
                                                        cfg.fading.sigma_db, su_count,
                                                        channel_count, fade_rng, coherence);
            else if (cfg.mismatch.enabled)
                field = channel::observe_with_mismatch(
                    channel::LinkGainField{channel::Matrix(su_count, channel_count),
                                           channel::Matrix(su_count, channel_count), coherence},
                    prep.mismatch_model, fade_rng);
            else
                field = channel::rayleigh_block_field(prep.mean_snr_linear, su_count,
                                                      channel_count, fade_rng, coherence);
            if (prep.csi_selection) {
                for (int m = 0; m < su_count; ++m)
                    for (int n = 0; n < channel_count; ++n) {
                        const double est = field.snr_estimate(m, n);
                        const double unit =
                            prep.mismatch_table
                                ? prep.mismatch_table->lookup(est)
                                : (cfg.reward.kind == reward::RewardKind::capacity
                                       ? std::log2(1.0 + est)
                                       : std::log2(1.0 - 1.5 * est /
                                                             std::log(5.0 * cfg.reward.ber_target)));
                        csi_rewards(m, n) = unit * prep.bandwidth[n];
                    }
            }
        }

        claims.reset(su_count, channel_count);
        for (int m = 0; m < su_count; ++m) {
            const std::span<const double> belief_row{&beliefs.v[static_cast<std::size_t>(m) * channel_count],
                                                     static_cast<std::size_t>(channel_count)};
            const std::span<const double> reward_row =
                prep.csi_selection
                    ? std::span<const double>{&csi_rewards.v[static_cast<std::size_t>(m) * channel_count],
                                              static_cast<std::size_t>(channel_count)}
                    : std::span<const double>{prep.bandwidth};
            strategy::SuContext ctx{belief_row, reward_row, collided[m] != 0, last_channel[m]};
            chosen[m] = strategy::select_channel(kind, ctx, prep.ca_top_l, su_rng[m]);
        }

        for (int m = 0; m < su_count; ++m) {
            observed[m] = prep.det ? detector::sense(occ.states[chosen[m]], *prep.det, sense_rng)
                                   : occ.states[chosen[m]];
            if (observed[m] == pu_traffic::ChannelState::idle)
                claims.per_channel[chosen[m]].push_back(m);
        }

        mac::resolve_contention_into(claims, occ, mac_rng, outcome);

        double su_total = 0.0;
        for (int m = 0; m < su_count; ++m) {
            delivered[m] = outcome.su[m] == mac::SuResult::transmitted
                               ? reward::evaluate(prep.reward_model, chosen[m],
                                                  field.snr(m, chosen[m]))
                               : 0.0;
            su_total += delivered[m];
        }
        double pu_total = 0.0;
        for (int n = 0; n < channel_count; ++n)
            if (occ.states[n] == pu_traffic::ChannelState::busy && !outcome.pu_disrupted[n])
                pu_total += reward::reward_capacity(prep.bandwidth[n], prep.pu_nominal_snr_linear);

        for (int m = 0; m < su_count; ++m) {
            const std::span<double> belief_row{&beliefs.v[static_cast<std::size_t>(m) * channel_count],
                                               static_cast<std::size_t>(channel_count)};
            const pu_traffic::Observation obs{chosen[m], observed[m]};
            if (prep.det)
                pu_traffic::belief_update_noisy_inplace(belief_row, obs, prep.det->p_m,
                                                        prep.det->p_f, prep.pu);
            else
                pu_traffic::belief_update_perfect_inplace(belief_row, obs, prep.pu);
            collided[m] = outcome.su[m] == mac::SuResult::lost_contention ? 1 : 0;
            last_channel[m] = chosen[m];
        }

        sink.slot(chosen, observed, outcome.su, delivered, occ, su_total, pu_total);
    }
}

}  // namespace

std::uint64_t replication_seed(std::uint64_t master_seed, int replication_index) {
    return derive_seed(master_seed,
                       {kSeedTagReplication, static_cast<std::uint64_t>(replication_index)});
}

std::vector<SlotRecord> run_episode(const config::ScenarioConfig& cfg, std::uint64_t rep_seed) {
    const Prepared prep = prepare(cfg);
    RecordSink sink;
    run_episode_core(prep, rep_seed, sink);
    return std::move(sink.records);
}

std::vector<double> metric_avg_normalized_throughput(std::span<const SlotRecord> records,
                                                     int window, int su_count) {
    if (window < 0) throw config_error("throughput metric: window must be nonnegative");
    if (su_count < 1) throw config_error("throughput metric: SU count must be positive");
    std::vector<double> prefix(records.size() + 1, 0.0);
    for (std::size_t t = 0; t < records.size(); ++t)
        prefix[t + 1] = prefix[t] + records[t].su_reward_total;
    std::vector<double> out(records.size());
    for (std::size_t t = 0; t < records.size(); ++t) {
        const std::size_t w = window == 0 ? t + 1 : std::min<std::size_t>(window, t + 1);
        out[t] = (prefix[t + 1] - prefix[t + 1 - w]) / (static_cast<double>(w) * su_count);
    }
    return out;
}

double metric_overall_spectral_efficiency(std::span<const SlotRecord> records,
                                          int channel_count) {
    if (records.empty()) return 0.0;
    if (channel_count < 1) throw config_error("spectral efficiency metric: channel count must be positive");
    double total = 0.0;
    for (const auto& r : records) total += r.su_reward_total + r.pu_reward_total;
    return total / (static_cast<double>(records.size()) * channel_count);
}

MetricsSeries run_monte_carlo(const config::ScenarioConfig& cfg, int max_threads) {
    const Prepared prep = prepare(cfg);
    const int reps = cfg.replications;
    const int slots = cfg.horizon;

    std::vector<std::vector<double>> series(reps);
    std::vector<double> spectral(reps, 0.0);

    std::atomic<int> next{0};
    std::mutex err_mutex;
    int err_rep = -1;
    std::exception_ptr err;

    // Windowing of the raw per-slot totals happens inline (the sink records
    // network totals, not SlotRecords).
    const auto run_one = [&](int rep) {
        MetricsSink sink;
        run_episode_core(prep, replication_seed(cfg.seed, rep), sink);
        std::vector<double> prefix(sink.su_totals.size() + 1, 0.0);
        for (std::size_t t = 0; t < sink.su_totals.size(); ++t)
            prefix[t + 1] = prefix[t] + sink.su_totals[t];
        std::vector<double> s(sink.su_totals.size());
        for (std::size_t t = 0; t < s.size(); ++t) {
            const std::size_t w = cfg.metrics.window == 0
                                      ? t + 1
                                      : std::min<std::size_t>(cfg.metrics.window, t + 1);
            s[t] = (prefix[t + 1] - prefix[t + 1 - w]) / (static_cast<double>(w) * cfg.su_count);
        }
        series[rep] = std::move(s);
        spectral[rep] = (sink.su_sum + sink.pu_sum) /
                        (static_cast<double>(slots) * cfg.channel_count);
    };

    int n_threads = max_threads > 0 ? max_threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = std::min(n_threads, reps);

    if (n_threads <= 1) {
        for (int rep = 0; rep < reps; ++rep) {
            try {
                run_one(rep);
            } catch (const std::exception& ex) {
                throw std::runtime_error("replication " + std::to_string(rep) +
                                         " failed: " + ex.what());
            }
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back([&]() {
                while (true) {
                    const int rep = next.fetch_add(1);
                    if (rep >= reps) return;
                    try {
                        run_one(rep);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(err_mutex);
                        if (err_rep < 0 || rep < err_rep) {
                            err_rep = rep;
                            err = std::current_exception();
                        }
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (err) {
            try {
                std::rethrow_exception(err);
            } catch (const std::exception& ex) {
                throw std::runtime_error("replication " + std::to_string(err_rep) +
                                         " failed: " + ex.what());
            }
        }
    }

    MetricsSeries out;
    out.slots = slots;
    out.replications = reps;
    out.seed = cfg.seed;
    out.throughput_mean.resize(slots, 0.0);
    out.throughput_stderr.resize(slots, 0.0);
    for (int t = 0; t < slots; ++t) {
        double mean = 0.0;
        for (int rep = 0; rep < reps; ++rep) mean += series[rep][t];
        mean /= reps;
        double var = 0.0;
        for (int rep = 0; rep < reps; ++rep) {
            const double d = series[rep][t] - mean;
            var += d * d;
        }
        out.throughput_mean[t] = mean;
        out.throughput_stderr[t] =
            reps > 1 ? std::sqrt(var / (reps - 1)) / std::sqrt(static_cast<double>(reps)) : 0.0;
    }
    {
        double mean = 0.0;
        for (double v : spectral) mean += v;
        mean /= reps;
        double var = 0.0;
        for (double v : spectral) var += (v - mean) * (v - mean);
        out.spectral_efficiency_mean = mean;
        out.spectral_efficiency_stderr =
            reps > 1 ? std::sqrt(var / (reps - 1)) / std::sqrt(static_cast<double>(reps)) : 0.0;
    }
    return out;
}

}  // namespace crsense::engine
