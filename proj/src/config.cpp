#include "crsense/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace crsense::config {

namespace {

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void syntax_error(const std::string& origin, int line, int col, const std::string& msg) {
    std::ostringstream oss;
    oss << origin << ":" << line << ":" << col << ": " << msg;
    throw config_error(oss.str());
}

}  // namespace

void ConfigMap::set(std::string key, std::string value) { kv_[std::move(key)] = std::move(value); }

const std::string* ConfigMap::find(const std::string& key) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? nullptr : &it->second;
}

void ConfigMap::apply_override(const std::string& kev) {
    const auto eq = kev.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override must have the form key=value: '" + kev + "'");
    std::string key{trim(std::string_view{kev}.substr(0, eq))};
    std::string value{trim(std::string_view{kev}.substr(eq + 1))};
    if (key.empty()) throw config_error("override has an empty key: '" + kev + "'");
    set(std::move(key), std::move(value));
}

ConfigMap ConfigMap::parse_string(std::string_view text, std::string origin) {
    ConfigMap map;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                              : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        const std::size_t hash = raw.find('#');
        std::string_view line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        const std::size_t first_col = raw.find_first_not_of(" \t") + 1;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            syntax_error(origin, line_no, static_cast<int>(first_col),
                         "expected an assignment of the form key = value");

        const std::string_view key = trim(line.substr(0, eq));
        if (key.empty())
            syntax_error(origin, line_no, static_cast<int>(first_col), "assignment has an empty key");
        bool expect_start = true;
        for (std::size_t i = 0; i < key.size(); ++i) {
            const char c = key[i];
            if (expect_start) {
                if (!ident_start(c))
                    syntax_error(origin, line_no, static_cast<int>(first_col + i),
                                 std::string("key segment must start with a letter or '_', got '") + c + "'");
                expect_start = false;
            } else if (c == '.') {
                expect_start = true;
            } else if (!ident_char(c)) {
                syntax_error(origin, line_no, static_cast<int>(first_col + i),
                             std::string("invalid character '") + c + "' in key");
            }
        }
        if (expect_start)
            syntax_error(origin, line_no, static_cast<int>(first_col + key.size()),
                         "key must not end with '.'");

        std::string_view value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        map.set(std::string{key}, std::string{value});
    }
    return map;
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return parse_string(oss.str(), path);
}

namespace {

/// Reads typed values out of a ConfigMap, collecting problems instead of
/// throwing so every violation can be reported at once.
class Reader {
public:
    Reader(const ConfigMap& map, std::vector<std::string>& violations)
        : map_(map), violations_(violations) {}

    bool has(const std::string& key) {
        consumed_.insert(key);
        return map_.contains(key);
    }

    void read_double(const std::string& key, double& out) {
        if (const std::string* s = take(key)) parse_double(key, *s, out);
    }
    void read_int(const std::string& key, int& out) {
        if (const std::string* s = take(key)) {
            long long v = 0;
            if (!parse_ll(*s, v))
                bad(key, "expected an integer, got '" + *s + "'");
            else
                out = static_cast<int>(v);
        }
    }
    void read_u64(const std::string& key, std::uint64_t& out) {
        if (const std::string* s = take(key)) {
            std::uint64_t v = 0;
            const auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
            if (ec != std::errc{} || p != s->data() + s->size())
                bad(key, "expected an unsigned integer, got '" + *s + "'");
            else
                out = v;
        }
    }
    void read_bool(const std::string& key, bool& out) {
        if (const std::string* s = take(key)) {
            if (*s == "true")
                out = true;
            else if (*s == "false")
                out = false;
            else
                bad(key, "expected true or false, got '" + *s + "'");
        }
    }
    void read_opt_double(const std::string& key, std::optional<double>& out) {
        if (const std::string* s = take(key)) {
            double v = 0.0;
            if (parse_double(key, *s, v)) out = v;
        }
    }
    void read_double_list(const std::string& key, std::vector<double>& out) {
        if (const std::string* s = take(key)) {
            std::vector<double> vals;
            std::size_t start = 0;
            bool ok = true;
            while (start <= s->size()) {
                std::size_t comma = s->find(',', start);
                if (comma == std::string::npos) comma = s->size();
                const std::string item{trim(std::string_view{*s}.substr(start, comma - start))};
                double v = 0.0;
                if (item.empty() || !parse_raw_double(item, v)) {
                    bad(key, "expected a number or comma-separated list, got '" + *s + "'");
                    ok = false;
                    break;
                }
                vals.push_back(v);
                start = comma + 1;
            }
            if (ok && !vals.empty()) out = std::move(vals);
        }
    }
    /// "cumulative" maps to 0; otherwise a nonnegative integer.
    void read_window(const std::string& key, int& out) {
        if (const std::string* s = take(key)) {
            if (*s == "cumulative") {
                out = 0;
                return;
            }
            long long v = 0;
            if (!parse_ll(*s, v))
                bad(key, "expected 'cumulative' or an integer, got '" + *s + "'");
            else
                out = static_cast<int>(v);
        }
    }
    template <typename Enum>
    void read_enum(const std::string& key, Enum& out,
                   std::initializer_list<std::pair<const char*, Enum>> names) {
        if (const std::string* s = take(key)) {
            for (const auto& [name, value] : names)
                if (*s == name) {
                    out = value;
                    return;
                }
            std::string allowed;
            for (const auto& [name, value] : names) {
                if (!allowed.empty()) allowed += ", ";
                allowed += name;
            }
            bad(key, "expected one of {" + allowed + "}, got '" + *s + "'");
        }
    }

    void flag_unknown_keys() {
        for (const auto& [key, value] : map_.entries())
            if (!consumed_.count(key)) violations_.push_back(key + ": unknown key");
    }

private:
    const std::string* take(const std::string& key) {
        consumed_.insert(key);
        return map_.find(key);
    }
    void bad(const std::string& key, const std::string& msg) {
        violations_.push_back(key + ": " + msg);
    }
    static bool parse_raw_double(const std::string& s, double& out) {
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && p == s.data() + s.size();
    }
    static bool parse_ll(const std::string& s, long long& out) {
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && p == s.data() + s.size();
    }
    bool parse_double(const std::string& key, const std::string& s, double& out) {
        if (parse_raw_double(s, out)) return true;
        bad(key, "expected a number, got '" + s + "'");
        return false;
    }

    const ConfigMap& map_;
    std::vector<std::string>& violations_;
    std::set<std::string> consumed_;
};

}  // namespace

ScenarioConfig scenario_from_map(const ConfigMap& map, std::vector<std::string>& violations) {
    ScenarioConfig cfg;
    Reader r(map, violations);

    r.read_int("su_count", cfg.su_count);
    r.read_int("channel_count", cfg.channel_count);
    r.read_int("horizon", cfg.horizon);
    r.read_int("replications", cfg.replications);
    r.read_u64("seed", cfg.seed);

    r.read_double("pu.p00", cfg.pu.p00);
    r.read_double("pu.p01", cfg.pu.p01);
    r.read_double("pu.p10", cfg.pu.p10);
    r.read_double("pu.p11", cfg.pu.p11);

    r.read_enum("fading.model", cfg.fading.model,
                {{"rayleigh_iid", FadingModel::rayleigh_iid},
                 {"lognormal_corr", FadingModel::lognormal_corr}});
    r.read_double("fading.mean_snr_db", cfg.fading.mean_snr_db);
    r.read_double("fading.sigma_db", cfg.fading.sigma_db);
    r.read_opt_double("fading.rho", cfg.fading.rho);
    r.read_opt_double("fading.a", cfg.fading.a);
    r.read_opt_double("fading.d", cfg.fading.d);
    r.read_int("fading.coherence_slots", cfg.fading.coherence_slots);

    r.read_bool("mismatch.enabled", cfg.mismatch.enabled);
    r.read_double("mismatch.nmse", cfg.mismatch.nmse);
    r.read_enum("mismatch.density_form", cfg.mismatch.density_form,
                {{"corrected", channel::DensityForm::corrected},
                 {"printed", channel::DensityForm::printed}});

    r.read_enum("reward.kind", cfg.reward.kind,
                {{"conventional", reward::RewardKind::conventional},
                 {"capacity", reward::RewardKind::capacity},
                 {"adaptive_modulation", reward::RewardKind::adaptive_modulation}});
    r.read_double("reward.ber_target", cfg.reward.ber_target);
    r.read_double_list("reward.bandwidth", cfg.reward.bandwidth);

    r.read_bool("detector.enabled", cfg.detector.enabled);
    r.read_int("detector.nu", cfg.detector.nu);
    r.read_double("detector.target_pm", cfg.detector.target_pm);
    r.read_double("detector.pu_mean_snr_db", cfg.detector.pu_mean_snr_db);

    if (r.has("strategy.kind")) {
        try {
            cfg.strategy.kind = strategy::strategy_from_string(*map.find("strategy.kind"));
        } catch (const config_error& e) {
            violations.push_back(std::string("strategy.kind: ") + e.what());
        }
    }
    r.read_int("strategy.ca_top_l", cfg.strategy.ca_top_l);

    r.read_window("metrics.window", cfg.metrics.window);
    r.read_double("metrics.pu_nominal_snr_db", cfg.metrics.pu_nominal_snr_db);

    r.read_double("numerics.relative_tolerance", cfg.numerics.relative_tolerance);
    r.read_int("numerics.max_subdivisions", cfg.numerics.max_subdivisions);

    r.flag_unknown_keys();
    for (const std::string& v : validate(cfg)) violations.push_back(v);
    return cfg;
}

ScenarioConfig scenario_from_map_or_throw(const ConfigMap& map) {
    std::vector<std::string> violations;
    ScenarioConfig cfg = scenario_from_map(map, violations);
    if (!violations.empty()) {
        std::ostringstream oss;
        oss << "invalid configuration:";
        for (const auto& v : violations) oss << "\n  " << v;
        throw config_error(oss.str());
    }
    return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    return scenario_from_map_or_throw(ConfigMap::parse_file(path));
}

}  // namespace crsense::config
