#include "crsense/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>
#include <thread>

#include "crsense/engine.hpp"
#include "crsense/svg.hpp"

namespace crsense::cli {

int thread_cap_from_env() {
    const char* env = std::getenv("CRSENSE_THREADS");
    if (!env || !*env) return 0;
    const int v = std::atoi(env);
    return v > 0 ? v : 1;
}

int resolve_threads(const RunOptions& opts) {
    if (opts.threads > 0) return opts.threads;
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    const int cap = thread_cap_from_env();
    if (cap > 0) n = std::min(n, cap);
    return n;
}

namespace {

config::ScenarioConfig build_point_config(const Preset& preset, const RunOptions& opts,
                                          SweepVar var, double value,
                                          const std::string& strategy_name) {
    config::ConfigMap map = preset.base;
    apply_sweep_value(map, var, value);
    for (const std::string& kv : opts.overrides) map.apply_override(kv);
    if (opts.seed) map.set("seed", std::to_string(*opts.seed));
    if (opts.replications) map.set("replications", std::to_string(*opts.replications));
    map.set("strategy.kind", strategy_name);
    return config::scenario_from_map_or_throw(map);
}

void append_point_rows(std::vector<CsvRow>& rows, const Preset& preset,
                       const config::ScenarioConfig& cfg, const engine::MetricsSeries& mc,
                       double sweep_value, const std::string& strategy_name) {
    const char* var = sweep_var_name(preset.sweep);
    if (preset.sweep == SweepVar::none) {
        for (int t = 0; t < mc.slots; ++t)
            rows.push_back(CsvRow{var, static_cast<double>(t + 1), strategy_name,
                                  "avg_norm_throughput", mc.throughput_mean[t],
                                  mc.throughput_stderr[t], mc.slots, mc.replications, mc.seed});
        return;
    }
    rows.push_back(CsvRow{var, sweep_value, strategy_name, "avg_norm_throughput",
                          mc.throughput_mean.back(), mc.throughput_stderr.back(), mc.slots,
                          mc.replications, mc.seed});
    if (cfg.detector.enabled)
        rows.push_back(CsvRow{var, sweep_value, strategy_name, "overall_spectral_efficiency",
                              mc.spectral_efficiency_mean, mc.spectral_efficiency_stderr,
                              mc.slots, mc.replications, mc.seed});
}

void print_summary(std::ostream& log, const Preset& preset, std::span<const CsvRow> rows) {
    log << "preset " << preset.name << "\n";
    char buf[160];
    if (preset.sweep == SweepVar::none) {
        log << "  final-slot avg normalized throughput (mean +/- se):\n";
        for (const std::string& s : preset.strategies) {
            const CsvRow* last = nullptr;
            for (const CsvRow& r : rows)
                if (r.strategy == s && r.metric == "avg_norm_throughput") last = &r;
            if (last) {
                std::snprintf(buf, sizeof(buf), "    %-18s %8.4f +/- %.4f\n", s.c_str(),
                              last->mean, last->se);
                log << buf;
            }
        }
        return;
    }
    log << "  " << sweep_var_name(preset.sweep) << " sweep, avg normalized throughput:\n";
    for (const std::string& s : preset.strategies) {
        std::snprintf(buf, sizeof(buf), "    %-18s", s.c_str());
        log << buf;
        for (const CsvRow& r : rows)
            if (r.strategy == s && r.metric == "avg_norm_throughput") {
                std::snprintf(buf, sizeof(buf), "  %s=%.4f", format_double(r.sweep_value).c_str(),
                              r.mean);
                log << buf;
            }
        log << "\n";
    }
}

void maybe_write_svg(const Preset& preset, const RunOptions& opts,
                     std::span<const CsvRow> rows, const std::string& stem) {
    if (!opts.svg) return;
    std::vector<SvgSeries> series;
    for (const std::string& s : preset.strategies) {
        SvgSeries sv;
        sv.label = s;
        for (const CsvRow& r : rows)
            if (r.strategy == s && r.metric == "avg_norm_throughput")
                sv.points.emplace_back(r.sweep_value, r.mean);
        if (!sv.points.empty()) series.push_back(std::move(sv));
    }
    write_line_plot(stem + ".svg", preset.name, sweep_var_name(preset.sweep),
                    "avg normalized throughput", series);
}

}  // namespace

std::vector<CsvRow> execute_preset(const Preset& preset, const RunOptions& opts) {
    const int threads = resolve_threads(opts);
    std::vector<CsvRow> rows;
    const std::vector<double> grid = preset.sweep == SweepVar::none ? std::vector<double>{0.0}
                                                                    : preset.grid;
    for (double value : grid) {
        for (const std::string& strategy_name : preset.strategies) {
            const config::ScenarioConfig cfg =
                build_point_config(preset, opts, preset.sweep, value, strategy_name);
            const engine::MetricsSeries mc = engine::run_monte_carlo(cfg, threads);
            append_point_rows(rows, preset, cfg, mc, value, strategy_name);
        }
    }
    return rows;
}

std::string run_preset_to_files(const Preset& preset, const RunOptions& opts, std::ostream& log) {
    const std::vector<CsvRow> rows = execute_preset(preset, opts);
    std::filesystem::create_directories(opts.out_dir);
    const std::string stem = (std::filesystem::path(opts.out_dir) / preset.name).string();
    const std::string csv_path = stem + ".csv";
    write_csv(csv_path, rows);
    maybe_write_svg(preset, opts, rows, stem);
    print_summary(log, preset, rows);
    log << "  wrote " << csv_path << "\n";
    return csv_path;
}

std::string run_config_file(const std::string& path, const RunOptions& opts, std::ostream& log) {
    // Behaves like a one-strategy time-series preset named after the file.
    config::ConfigMap map = config::ConfigMap::parse_file(path);
    Preset preset;
    preset.name = std::filesystem::path(path).stem().string();
    preset.base = std::move(map);
    preset.sweep = SweepVar::none;
    const config::ScenarioConfig probe = [&] {
        config::ConfigMap m = preset.base;
        for (const std::string& kv : opts.overrides) m.apply_override(kv);
        return config::scenario_from_map_or_throw(m);
    }();
    preset.strategies = {strategy::to_string(probe.strategy.kind)};
    return run_preset_to_files(preset, opts, log);
}

}  // namespace crsense::cli
