#include "crsense/presets.hpp"

#include "crsense/csv.hpp"

namespace crsense::cli {

const char* sweep_var_name(SweepVar v) {
    switch (v) {
        case SweepVar::none: return "slot";
        case SweepVar::rho: return "rho";
        case SweepVar::mean_snr_db: return "mean_snr_db";
        case SweepVar::nmse: return "nmse";
        case SweepVar::target_pm: return "target_pm";
    }
    return "?";
}

namespace {

constexpr const char* kCommonPu = R"(
pu.p00 = 0.8
pu.p01 = 0.2
pu.p10 = 0.2
pu.p11 = 0.8
reward.bandwidth = 1
seed = 1
replications = 200
)";

Preset fig3() {
    Preset p;
    p.name = "fig3";
    p.base = config::ConfigMap::parse_string(std::string(R"(
# throughput vs time, capacity reward, iid Rayleigh links
su_count = 20
channel_count = 40
horizon = 2000
fading.model = rayleigh_iid
fading.mean_snr_db = 10
fading.coherence_slots = 1
reward.kind = capacity
metrics.window = cumulative
)") + kCommonPu,
                                            "preset:fig3");
    p.sweep = SweepVar::none;
    p.strategies = {"random", "myopic", "randomized_myopic", "myopic_ca", "csi_aided"};
    return p;
}

Preset fig5() {
    Preset p;
    p.name = "fig5";
    p.base = config::ConfigMap::parse_string(std::string(R"(
# throughput vs link correlation, correlated lognormal shadowing
su_count = 20
channel_count = 40
horizon = 20
fading.model = lognormal_corr
fading.mean_snr_db = 10
fading.sigma_db = 5
fading.coherence_slots = 20
fading.rho = 0
fading.d = 0.88
reward.kind = capacity
metrics.window = cumulative
)") + kCommonPu,
                                            "preset:fig5");
    p.sweep = SweepVar::rho;
    p.grid = {0.0, 0.3, 0.6, 0.9, 0.99};
    p.strategies = {"myopic", "csi_aided"};
    return p;
}

Preset fig6() {
    Preset p;
    p.name = "fig6";
    p.base = config::ConfigMap::parse_string(std::string(R"(
# throughput vs average SNR, continuous-rate adaptive modulation
su_count = 20
channel_count = 40
horizon = 20
fading.model = rayleigh_iid
fading.coherence_slots = 20
reward.kind = adaptive_modulation
reward.ber_target = 1e-3
metrics.window = cumulative
)") + kCommonPu,
                                            "preset:fig6");
    p.sweep = SweepVar::mean_snr_db;
    p.grid = {0.0, 3.0, 6.0, 9.0, 12.0, 15.0, 18.0, 21.0, 24.0, 27.0, 30.0};
    p.strategies = {"myopic", "myopic_ca", "csi_aided"};
    return p;
}

Preset fig7() {
    Preset p;
    p.name = "fig7";
    p.base = config::ConfigMap::parse_string(std::string(R"(
# throughput vs CSI estimation error, small network
su_count = 3
channel_count = 10
horizon = 20
fading.model = rayleigh_iid
fading.mean_snr_db = 10
fading.coherence_slots = 20
mismatch.enabled = true
mismatch.density_form = corrected
reward.kind = capacity
metrics.window = cumulative
)") + kCommonPu,
                                            "preset:fig7");
    p.sweep = SweepVar::nmse;
    p.grid = {0.0, 1e-3, 1e-2, 0.1, 0.5, 1.0};  // 0 = perfect-CSI reference
    p.strategies = {"myopic", "csi_aided"};
    return p;
}

Preset fig8() {
    Preset p;
    p.name = "fig8";
    p.base = config::ConfigMap::parse_string(std::string(R"(
# throughput vs allowed miss-detection rate, energy-detector sensing
su_count = 20
channel_count = 40
horizon = 20
fading.model = rayleigh_iid
fading.mean_snr_db = 10
fading.coherence_slots = 20
reward.kind = capacity
detector.enabled = true
detector.nu = 5
detector.pu_mean_snr_db = 10
metrics.window = cumulative
metrics.pu_nominal_snr_db = 10
)") + kCommonPu,
                                            "preset:fig8");
    p.sweep = SweepVar::target_pm;
    p.grid = {0.01, 0.05, 0.1, 0.2, 0.4};
    p.strategies = {"myopic", "csi_aided"};
    return p;
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig3", "fig5", "fig6", "fig7", "fig8"}; }

Preset make_preset(const std::string& name) {
    if (name == "fig3") return fig3();
    if (name == "fig5") return fig5();
    if (name == "fig6") return fig6();
    if (name == "fig7") return fig7();
    if (name == "fig8") return fig8();
    throw config_error("unknown preset: " + name);
}

void apply_sweep_value(config::ConfigMap& map, SweepVar var, double value) {
    switch (var) {
        case SweepVar::none:
            return;
        case SweepVar::rho:
            map.set("fading.rho", format_double(value));
            return;
        case SweepVar::mean_snr_db:
            map.set("fading.mean_snr_db", format_double(value));
            return;
        case SweepVar::nmse:
            if (value == 0.0) {
                map.set("mismatch.enabled", "false");
            } else {
                map.set("mismatch.enabled", "true");
                map.set("mismatch.nmse", format_double(value));
            }
            return;
        case SweepVar::target_pm:
            map.set("detector.target_pm", format_double(value));
            return;
    }
    throw config_error("unknown sweep variable");
}

}  // namespace crsense::cli
