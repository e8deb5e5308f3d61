#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crsense/csv.hpp"
#include "crsense/presets.hpp"
#include "crsense/runner.hpp"
#include "crsense/svg.hpp"

using namespace crsense;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

config::ScenarioConfig preset_config(const cli::Preset& p) {
    return config::scenario_from_map_or_throw(p.base);
}

}  // namespace

TEST_CASE("preset parameters match the published scenarios") {
    const auto fig3 = preset_config(cli::make_preset("fig3"));
    CHECK(fig3.su_count == 20);
    CHECK(fig3.channel_count == 40);
    CHECK(fig3.horizon == 2000);
    CHECK(fig3.replications == 200);
    CHECK(fig3.pu.p00 == 0.8);
    CHECK(fig3.pu.p01 == 0.2);
    CHECK(fig3.pu.p10 == 0.2);
    CHECK(fig3.pu.p11 == 0.8);
    CHECK(fig3.fading.mean_snr_db == 10.0);
    CHECK(fig3.fading.coherence_slots == 1);
    CHECK(fig3.reward.bandwidth == std::vector<double>{1.0});
    CHECK(fig3.reward.kind == reward::RewardKind::capacity);
    CHECK(fig3.metrics.window == 0);
    CHECK(cli::make_preset("fig3").strategies.size() == 5);

    const auto fig5 = cli::make_preset("fig5");
    CHECK(preset_config(fig5).fading.sigma_db == 5.0);
    CHECK(preset_config(fig5).fading.model == config::FadingModel::lognormal_corr);
    CHECK(fig5.grid == std::vector<double>{0.0, 0.3, 0.6, 0.9, 0.99});

    const auto fig6 = preset_config(cli::make_preset("fig6"));
    CHECK(fig6.reward.kind == reward::RewardKind::adaptive_modulation);
    CHECK(fig6.reward.ber_target == 1e-3);

    const auto fig7 = preset_config(cli::make_preset("fig7"));
    CHECK(fig7.su_count == 3);
    CHECK(fig7.channel_count == 10);
    CHECK(fig7.mismatch.enabled);

    const auto fig8 = preset_config(cli::make_preset("fig8"));
    CHECK(fig8.detector.enabled);
    CHECK(fig8.detector.nu == 5);
    CHECK(fig8.detector.pu_mean_snr_db == 10.0);

    CHECK_THROWS_AS(cli::make_preset("fig4"), config_error);
}

TEST_CASE("csv writing round-trips through the reader") {
    std::vector<cli::CsvRow> rows;
    rows.push_back({"rho", 0.3, "csi_aided", "avg_norm_throughput", 2.25, 0.01, 20, 200, 1});
    rows.push_back({"rho", 0.99, "myopic", "avg_norm_throughput", 1.0 / 3.0, 2e-16, 20, 200,
                    0xFFFFFFFFFFFFFFFFULL});
    const std::string text = cli::to_csv(rows);
    const auto back = cli::read_csv_string(text);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].sweep_var == rows[i].sweep_var);
        CHECK(back[i].sweep_value == rows[i].sweep_value);
        CHECK(back[i].strategy == rows[i].strategy);
        CHECK(back[i].metric == rows[i].metric);
        CHECK(back[i].mean == rows[i].mean);
        CHECK(back[i].se == rows[i].se);
        CHECK(back[i].slots == rows[i].slots);
        CHECK(back[i].replications == rows[i].replications);
        CHECK(back[i].seed == rows[i].seed);
    }
    CHECK_THROWS_AS(cli::read_csv_string("bogus header\n"), config_error);
}

TEST_CASE("shortest round-trip double formatting") {
    CHECK(cli::format_double(0.3) == "0.3");
    CHECK(cli::format_double(2000.0) == "2000");
    CHECK(cli::format_double(1e-3) == "0.001");
    CHECK(cli::format_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("sweep application writes the right keys") {
    config::ConfigMap map;
    cli::apply_sweep_value(map, cli::SweepVar::rho, 0.6);
    CHECK(*map.find("fading.rho") == "0.6");
    cli::apply_sweep_value(map, cli::SweepVar::target_pm, 0.05);
    CHECK(*map.find("detector.target_pm") == "0.05");
    cli::apply_sweep_value(map, cli::SweepVar::nmse, 0.0);
    CHECK(*map.find("mismatch.enabled") == "false");
    cli::apply_sweep_value(map, cli::SweepVar::nmse, 0.5);
    CHECK(*map.find("mismatch.enabled") == "true");
    CHECK(*map.find("mismatch.nmse") == "0.5");
}

TEST_CASE("a small sweep runs end to end, deterministically across workers") {
    cli::Preset tiny;
    tiny.name = "tiny";
    tiny.base = config::ConfigMap::parse_string(R"(
su_count = 3
channel_count = 4
horizon = 10
replications = 6
seed = 5
fading.model = lognormal_corr
fading.sigma_db = 5
fading.coherence_slots = 10
reward.kind = capacity
)");
    tiny.sweep = cli::SweepVar::rho;
    tiny.grid = {0.0, 0.9};
    tiny.strategies = {"myopic", "csi_aided"};

    cli::RunOptions opts;
    opts.threads = 1;
    const auto rows1 = cli::execute_preset(tiny, opts);
    opts.threads = 3;
    const auto rows2 = cli::execute_preset(tiny, opts);
    CHECK(cli::to_csv(rows1) == cli::to_csv(rows2));

    REQUIRE(rows1.size() == 4);  // 2 grid points x 2 strategies, one metric each
    for (const auto& r : rows1) {
        CHECK(r.sweep_var == "rho");
        CHECK(r.metric == "avg_norm_throughput");
        CHECK(r.slots == 10);
        CHECK(r.replications == 6);
        CHECK(r.mean >= 0.0);
    }

    SUBCASE("overrides reach every grid point") {
        cli::RunOptions with_reps = opts;
        with_reps.overrides = {"replications=3"};
        const auto rows3 = cli::execute_preset(tiny, with_reps);
        for (const auto& r : rows3) CHECK(r.replications == 3);
    }

    SUBCASE("unknown override keys are rejected") {
        cli::RunOptions bad = opts;
        bad.overrides = {"does.not.exist=1"};
        CHECK_THROWS_AS(cli::execute_preset(tiny, bad), config_error);
    }
}

TEST_CASE("files are written where requested") {
    const auto dir = std::filesystem::temp_directory_path() / "crsense_test_out";
    std::filesystem::remove_all(dir);

    cli::Preset tiny;
    tiny.name = "smoke";
    tiny.base = config::ConfigMap::parse_string(R"(
su_count = 2
channel_count = 3
horizon = 8
replications = 2
seed = 3
fading.coherence_slots = 4
)");
    tiny.sweep = cli::SweepVar::none;
    tiny.strategies = {"csi_aided"};

    cli::RunOptions opts;
    opts.out_dir = dir.string();
    opts.threads = 1;
    opts.svg = true;
    std::ostringstream log;
    const std::string csv_path = cli::run_preset_to_files(tiny, opts, log);
    CHECK(std::filesystem::exists(csv_path));
    CHECK(std::filesystem::exists(dir / "smoke.svg"));
    CHECK(slurp((dir / "smoke.svg").string()).substr(0, 4) == "<svg");
    CHECK(log.str().find("smoke") != std::string::npos);

    const auto rows = cli::read_csv(csv_path);
    CHECK(rows.size() == 8);  // one per slot
    for (int t = 0; t < 8; ++t) CHECK(rows[t].sweep_value == t + 1);

    SUBCASE("a config file run uses its own strategy") {
        const auto conf_path = dir / "own.conf";
        std::ofstream out(conf_path);
        out << "su_count = 2\nchannel_count = 3\nhorizon = 5\nreplications = 2\n"
               "strategy.kind = random\nfading.coherence_slots = 5\n";
        out.close();
        std::ostringstream log2;
        const std::string csv2 = cli::run_config_file(conf_path.string(), opts, log2);
        const auto rows2 = cli::read_csv(csv2);
        REQUIRE(!rows2.empty());
        for (const auto& r : rows2) CHECK(r.strategy == "random");
    }

    std::filesystem::remove_all(dir);
}
