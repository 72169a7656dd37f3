// SPDX-License-Identifier: Apache-2.0
#include "risfso/config.hpp"

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace risfso {

namespace {

constexpr std::array<std::pair<Experiment, const char*>, 9> kExperiments{{
    {Experiment::fig4, "fig4"},
    {Experiment::fig5, "fig5"},
    {Experiment::fig6, "fig6"},
    {Experiment::fig7, "fig7"},
    {Experiment::fig8, "fig8"},
    {Experiment::fig9, "fig9"},
    {Experiment::table2, "table2"},
    {Experiment::validate, "validate"},
    {Experiment::custom, "custom"},
}};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double parse_number(const std::string& key, const std::string& raw, const std::string& unit, int line)
{
    std::string v = trim(raw);
    if (!unit.empty() && v.size() > unit.size() && v.compare(v.size() - unit.size(), unit.size(), unit) == 0) {
        v = trim(v.substr(0, v.size() - unit.size()));
    }
    if (v.empty()) {
        throw ConfigError("missing value for '" + key + "'", line);
    }
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(d)) {
        throw ConfigError("'" + key + "' expects a number" + (unit.empty() ? "" : " in " + unit) + ", got '" +
                              trim(raw) + "'",
                          line);
    }
    return d;
}

long long parse_integer(const std::string& key, const std::string& raw, int line)
{
    const double d = parse_number(key, raw, "", line);
    if (d != std::floor(d) || std::fabs(d) > 9.0e15) {
        throw ConfigError("'" + key + "' expects an integer, got '" + trim(raw) + "'", line);
    }
    return static_cast<long long>(d);
}

bool parse_bool(const std::string& key, const std::string& raw, int line)
{
    const std::string v = trim(raw);
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("'" + key + "' expects true or false, got '" + v + "'", line);
}

struct KeyDef {
    ConfigKey key;
    std::function<void(ExperimentConfig&, const std::string&, int)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

KeyDef number_key(const char* name, const char* unit, const char* help, std::function<double&(ExperimentConfig&)> ref,
                  double scale = 1.0)
{
    KeyDef d;
    d.key = {name, unit, help};
    const std::string key = name;
    const std::string u = unit;
    d.set = [=](ExperimentConfig& c, const std::string& v, int line) { ref(c) = parse_number(key, v, u, line) * scale; };
    d.get = [=](const ExperimentConfig& c) {
        ExperimentConfig copy = c;
        return fmt9(ref(copy) / scale);
    };
    return d;
}

KeyDef int_key(const char* name, const char* help, std::function<int&(ExperimentConfig&)> ref)
{
    KeyDef d;
    d.key = {name, "", help};
    const std::string key = name;
    d.set = [=](ExperimentConfig& c, const std::string& v, int line) {
        const long long n = parse_integer(key, v, line);
        if (n < 1 || n > 1000000) {
            throw ConfigError("'" + key + "' must lie in [1, 1000000]", line);
        }
        ref(c) = static_cast<int>(n);
    };
    d.get = [=](const ExperimentConfig& c) {
        ExperimentConfig copy = c;
        return std::to_string(ref(copy));
    };
    return d;
}

const std::vector<KeyDef>& key_defs()
{
    static const std::vector<KeyDef> defs = [] {
        std::vector<KeyDef> v;
        {
            KeyDef d;
            d.key = {"experiment", "", "fig4 | fig5 | fig6 | fig7 | fig8 | fig9 | table2 | validate | custom"};
            d.set = [](ExperimentConfig& c, const std::string& s, int line) {
                const auto e = parse_experiment(trim(s));
                if (!e) {
                    throw ConfigError("unknown experiment '" + trim(s) + "'", line);
                }
                c.experiment = *e;
            };
            d.get = [](const ExperimentConfig& c) { return to_string(c.experiment); };
            v.push_back(d);
        }
        {
            KeyDef d;
            d.key = {"strategy", "", "Direct | FOR | DOR | Relay (custom experiment)"};
            d.set = [](ExperimentConfig& c, const std::string& s, int line) {
                const auto e = parse_strategy(trim(s));
                if (!e) {
                    throw ConfigError("unknown strategy '" + trim(s) + "'", line);
                }
                c.scenario.strategy = *e;
            };
            d.get = [](const ExperimentConfig& c) { return to_string(c.scenario.strategy); };
            v.push_back(d);
        }
        {
            KeyDef d;
            d.key = {"regime", "", "LN | GG (custom experiment)"};
            d.set = [](ExperimentConfig& c, const std::string& s, int line) {
                const auto e = parse_regime(trim(s));
                if (!e) {
                    throw ConfigError("unknown regime '" + trim(s) + "'", line);
                }
                c.scenario.regime = *e;
            };
            d.get = [](const ExperimentConfig& c) { return to_string(c.scenario.regime); };
            v.push_back(d);
        }
        {
            KeyDef d;
            d.key = {"seed", "", "Monte-Carlo seed"};
            d.set = [](ExperimentConfig& c, const std::string& s, int line) {
                const std::string t = trim(s);
                char* end = nullptr;
                errno = 0;
                const unsigned long long n = std::strtoull(t.c_str(), &end, 10);
                if (t.empty() || t[0] == '-' || *end != '\0' || errno == ERANGE) {
                    throw ConfigError("'seed' expects an unsigned 64-bit integer, got '" + t + "'", line);
                }
                c.seed = n;
            };
            d.get = [](const ExperimentConfig& c) { return std::to_string(c.seed); };
            v.push_back(d);
        }
        {
            KeyDef d;
            d.key = {"mc_samples", "", "Monte-Carlo draws per estimate"};
            d.set = [](ExperimentConfig& c, const std::string& s, int line) {
                const long long n = parse_integer("mc_samples", s, line);
                if (n < 1) {
                    throw ConfigError("'mc_samples' must be positive", line);
                }
                c.mc_samples = static_cast<std::size_t>(n);
            };
            d.get = [](const ExperimentConfig& c) { return std::to_string(c.mc_samples); };
            v.push_back(d);
        }
        {
            KeyDef d;
            d.key = {"output_dir", "", "directory for CSV outputs"};
            d.set = [](ExperimentConfig& c, const std::string& s, int line) {
                if (trim(s).empty()) {
                    throw ConfigError("'output_dir' must not be empty", line);
                }
                c.output_dir = trim(s);
            };
            d.get = [](const ExperimentConfig& c) { return c.output_dir; };
            v.push_back(d);
        }
        {
            KeyDef d;
            d.key = {"im_dd_half", "", "apply the IM/DD factor 1/2 to spectral efficiency"};
            d.set = [](ExperimentConfig& c, const std::string& s, int line) {
                c.im_dd_half = parse_bool("im_dd_half", s, line);
            };
            d.get = [](const ExperimentConfig& c) { return std::string(c.im_dd_half ? "true" : "false"); };
            v.push_back(d);
        }
        v.push_back(number_key("p_out_target", "", "outage target for table2/fig9",
                               [](ExperimentConfig& c) -> double& { return c.p_out_target; }));
        v.push_back(number_key("rail_length", "m", "railway length for BS counts",
                               [](ExperimentConfig& c) -> double& { return c.rail_length_m; }));
        v.push_back(number_key("gamma_th", "dB", "SNR threshold of the outage event",
                               [](ExperimentConfig& c) -> double& { return c.scenario.gamma_th_db; }));
        v.push_back(number_key("L_d", "m", "BS-to-detector offset across the track",
                               [](ExperimentConfig& c) -> double& { return c.scenario.track.L_d; }));
        v.push_back(number_key("L_0", "m", "along-track BS offset at the start of direct coverage",
                               [](ExperimentConfig& c) -> double& { return c.scenario.track.L_0; }));
        v.push_back(number_key("L_b", "m", "direct coverage length",
                               [](ExperimentConfig& c) -> double& { return c.scenario.track.L_b; }));
        v.push_back(number_key("L_m", "m", "RIS coverage length",
                               [](ExperimentConfig& c) -> double& { return c.scenario.track.L_m; }));
        v.push_back(number_key("bs_spacing", "m", "distance between adjacent BSs",
                               [](ExperimentConfig& c) -> double& { return c.scenario.track.bs_spacing; }));
        v.push_back(number_key("V_HST", "km/h", "train speed",
                               [](ExperimentConfig& c) -> double& { return c.scenario.track.V_HST; }, 1.0 / 3.6));
        {
            KeyDef d = number_key("Psi", "deg", "half divergence angle",
                                  [](ExperimentConfig& c) -> double& { return c.scenario.track.Psi; },
                                  std::numbers::pi / 180.0);
            auto base = d.set;
            d.set = [base](ExperimentConfig& c, const std::string& s, int line) {
                base(c, s, line);
                if (!c.w0_hat_explicit && c.scenario.track.Psi > 0.0) {
                    c.scenario.set_psi(c.scenario.track.Psi);
                }
            };
            v.push_back(d);
        }
        v.push_back(number_key("pole_height", "m", "BS and RIS mounting height",
                               [](ExperimentConfig& c) -> double& { return c.scenario.track.pole_height; }));
        v.push_back(number_key("roof_height", "m", "detector height",
                               [](ExperimentConfig& c) -> double& { return c.scenario.track.roof_height; }));
        v.push_back(int_key("N_k", "element rows per cell", [](ExperimentConfig& c) -> int& { return c.scenario.ris.N_k; }));
        v.push_back(int_key("N_l", "element columns per cell", [](ExperimentConfig& c) -> int& { return c.scenario.ris.N_l; }));
        v.push_back(int_key("N_m", "cells", [](ExperimentConfig& c) -> int& { return c.scenario.ris.N_m; }));
        v.push_back(number_key("element_diameter", "cm", "RIS element diameter",
                               [](ExperimentConfig& c) -> double& { return c.scenario.ris.a_r; }, 0.005));
        v.push_back(number_key("detector_diameter", "cm", "detector aperture diameter",
                               [](ExperimentConfig& c) -> double& { return c.scenario.ris.a_p; }, 0.005));
        v.push_back(number_key("rho", "", "RIS reflection efficiency",
                               [](ExperimentConfig& c) -> double& { return c.scenario.ris.rho; }));
        v.push_back(number_key("ris_setback", "m", "RIS distance beyond the end of RIS coverage",
                               [](ExperimentConfig& c) -> double& { return c.scenario.ris_setback; }));
        v.push_back(number_key("attenuation", "dB/km", "atmospheric attenuation",
                               [](ExperimentConfig& c) -> double& { return c.scenario.atm.gamma_db_per_km; }));
        v.push_back(number_key("Cn2", "m^-2/3", "refraction structure index",
                               [](ExperimentConfig& c) -> double& { return c.scenario.atm.Cn2; }));
        {
            KeyDef d = number_key("lambda", "nm", "wavelength",
                                  [](ExperimentConfig& c) -> double& { return c.scenario.atm.lambda; }, 1e-9);
            auto base = d.set;
            d.set = [base](ExperimentConfig& c, const std::string& s, int line) {
                base(c, s, line);
                if (!c.w0_hat_explicit && c.scenario.atm.lambda > 0.0 && c.scenario.track.Psi > 0.0) {
                    c.scenario.set_psi(c.scenario.track.Psi);
                }
            };
            v.push_back(d);
        }
        {
            KeyDef d = number_key("w0_hat", "m", "source beam waist; default lambda/(2 pi Psi)",
                                  [](ExperimentConfig& c) -> double& { return c.scenario.atm.w0_hat; });
            auto base = d.set;
            d.set = [base](ExperimentConfig& c, const std::string& s, int line) {
                base(c, s, line);
                c.w0_hat_explicit = true;
            };
            v.push_back(d);
        }
        v.push_back(number_key("sway_s", "cm", "BS sway standard deviation",
                               [](ExperimentConfig& c) -> double& { return c.scenario.sway.delta_s; }, 0.01));
        v.push_back(number_key("sway_r", "cm", "RIS sway standard deviation",
                               [](ExperimentConfig& c) -> double& { return c.scenario.sway.delta_r; }, 0.01));
        v.push_back(number_key("sway_l", "cm", "detector sway standard deviation",
                               [](ExperimentConfig& c) -> double& { return c.scenario.sway.delta_l; }, 0.01));
        v.push_back(number_key("zeta", "", "approximation factor",
                               [](ExperimentConfig& c) -> double& { return c.scenario.atm.zeta; }));
        v.push_back(number_key("h0_b", "", "direct misalignment peak gain",
                               [](ExperimentConfig& c) -> double& { return c.scenario.pointing.h0_b; }));
        v.push_back(number_key("xi", "", "direct misalignment exponent parameter",
                               [](ExperimentConfig& c) -> double& { return c.scenario.pointing.xi; }));
        v.push_back(number_key("P", "mW", "optical transmission power",
                               [](ExperimentConfig& c) -> double& { return c.scenario.power_P; }, 1e-3));
        v.push_back(number_key("eta", "", "optical-to-electrical coefficient",
                               [](ExperimentConfig& c) -> double& { return c.scenario.eta; }));
        v.push_back(number_key("sigma_w", "A/Hz", "direct branch noise standard deviation",
                               [](ExperimentConfig& c) -> double& { return c.scenario.sigma_w; }));
        v.push_back(number_key("sigma_w1", "A/Hz", "FOR branch noise standard deviation",
                               [](ExperimentConfig& c) -> double& { return c.scenario.sigma_w1; }));
        v.push_back(number_key("sigma_w2", "A/Hz", "DOR branch noise standard deviation",
                               [](ExperimentConfig& c) -> double& { return c.scenario.sigma_w2; }));
        return v;
    }();
    return defs;
}

} // namespace

ConfigError::ConfigError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
{
}

std::string to_string(Experiment e)
{
    for (const auto& [k, name] : kExperiments) {
        if (k == e) {
            return name;
        }
    }
    return "?";
}

std::optional<Experiment> parse_experiment(const std::string& s)
{
    for (const auto& [k, name] : kExperiments) {
        if (s == name) {
            return k;
        }
    }
    return std::nullopt;
}

void ExperimentConfig::validate() const
{
    try {
        scenario.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    if (!(scenario.sway.delta_s >= 0.0 && scenario.sway.delta_r >= 0.0 && scenario.sway.delta_l >= 0.0) ||
        !(scenario.sway.delta_s + scenario.sway.delta_r + scenario.sway.delta_l > 0.0)) {
        throw ConfigError("invalid configuration: sway deviations must be non-negative and not all zero");
    }
    if (!(p_out_target > 0.0 && p_out_target < 1.0)) {
        throw ConfigError("invalid configuration: p_out_target must lie in (0, 1)");
    }
    if (!(rail_length_m > 0.0)) {
        throw ConfigError("invalid configuration: rail_length must be positive");
    }
    if (mc_samples < 1) {
        throw ConfigError("invalid configuration: mc_samples must be positive");
    }
}

const std::vector<ConfigKey>& config_keys()
{
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        for (const KeyDef& d : key_defs()) {
            k.push_back(d.key);
        }
        return k;
    }();
    return keys;
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value, int line)
{
    for (const KeyDef& d : key_defs()) {
        if (d.key.name == key) {
            d.set(cfg, value, line);
            return;
        }
    }
    throw ConfigError("unknown key '" + key + "'", line);
}

ExperimentConfig parse_config(const std::string& text)
{
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::set<std::string> seen;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value'", line);
        }
        const std::string key = trim(body.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("missing key before '='", line);
        }
        if (!seen.insert(key).second) {
            throw ConfigError("duplicate key '" + key + "'", line);
        }
        apply_override(cfg, key, body.substr(eq + 1), line);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::vector<std::string>> effective_params(const ExperimentConfig& cfg)
{
    std::vector<std::vector<std::string>> rows;
    for (const KeyDef& d : key_defs()) {
        rows.push_back({d.key.name, d.get(cfg), d.key.unit});
    }
    return rows;
}

} // namespace risfso
