// SPDX-License-Identifier: Apache-2.0
//
// agingsim: link-level simulator for the massive MIMO downlink under
// channel aging (user mobility and oscillator phase noise)
// Copyright (C) 2026 agingsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Flat key-value configuration files (one `key = value` per line, `#`
// comments, comma-separated lists), CSV result output and the run manifest.
// The manifest echoes every resolved key in a form the parser reads back,
// with full double precision, so re-running from a manifest reproduces the
// CSV byte for byte.

#ifndef AGINGSIM_IO_HPP
#define AGINGSIM_IO_HPP

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "agingsim/experiments.hpp"
#include "agingsim/presets.hpp"
#include "agingsim/version.hpp"

namespace agingsim {

struct ConfigKeyDoc {
    const char* key;
    const char* units;
    const char* note;
};

/// Every accepted configuration key with units and the desk-scale default.
inline const std::vector<ConfigKeyDoc>& config_key_docs() {
    static const std::vector<ConfigKeyDoc> docs = {
        {"m", "antennas", "BS array size (default 64)"},
        {"k", "users", "single-antenna users (default 8)"},
        {"tau", "symbols", "pilot length, k <= tau <= t_c (default 8)"},
        {"t_c", "symbols", "coherence block length (default 200)"},
        {"p_u", "linear", "uplink power per user (default 1000)"},
        {"p_d", "linear", "downlink power per user (default 1000)"},
        {"sigma_b2", "linear", "BS noise variance (default 1)"},
        {"sigma_k2", "linear", "user noise variance (default 1)"},
        {"f_d", "Hz", "Doppler spread (default 0)"},
        {"t_s", "s", "symbol time (default 2.5e-8)"},
        {"f_c", "Hz", "carrier frequency (default 2e9)"},
        {"lo_topology", "-", "clo | ilo | slo (default clo)"},
        {"sigma_phi_deg", "degrees", "BS phase increment std; list of m under slo (default 0)"},
        {"sigma_varphi_deg", "degrees", "user phase increment std, scalar or list of k (default 0)"},
        {"cell_radius", "m", "cell radius (default 1000)"},
        {"guard_radius", "m", "minimum user distance (default 100)"},
        {"shadow_std_db", "dB", "lognormal shadowing std (default 8)"},
        {"path_loss_exp", "-", "path loss exponent (default 3.8)"},
        {"antenna_correlation", "-", "exponential model coefficient in [0,1) (default 0)"},
        {"aging_path", "-", "direct_jakes_lag | recursive_ar1 (default direct_jakes_lag)"},
        {"preset", "-", "fig1 | fig2 | fig3 | scaling; initializes every other key"},
        {"kind", "-", "sweep_m | sweep_doppler | power_for_target_rate | power_scaling"},
        {"grid", "list", "sweep values, strictly increasing (antennas or f_D*T_s)"},
        {"trials", "count", "Monte-Carlo trials (default 200, >= 100 for published CSV)"},
        {"seed", "u64", "root seed for every random stream (default 1)"},
        {"phase_noise_cases", "deg:deg list", "e.g. 0:0,0:2,2:2 (default)"},
        {"target_rate", "bits/s/Hz", "per-user target for power_for_target_rate (default 1)"},
        {"q_values", "list", "power-scaling exponents (default 0.4,0.5,0.6)"},
        {"name", "-", "output file stem (default: preset or kind name)"},
    };
    return docs;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw std::invalid_argument("config key '" + key + "': trailing characters in '" + v + "'");
    return out;
}

inline long parse_long(const std::string& key, const std::string& v) {
    const double d = parse_double(key, v);
    const long l = static_cast<long>(d);
    if (static_cast<double>(l) != d)
        throw std::invalid_argument("config key '" + key + "': expected an integer, got '" + v + "'");
    return l;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::uint64_t out = std::stoull(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument("trailing");
        return out;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an unsigned integer: '" + v + "'");
    }
}

inline std::vector<std::string> split(const std::string& v, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(v);
    while (std::getline(is, cur, sep))
        out.push_back(trim(cur));
    return out;
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const std::string& tok : split(v, ','))
        out.push_back(parse_double(key, tok));
    if (out.empty())
        throw std::invalid_argument("config key '" + key + "': empty list");
    return out;
}

inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_list(const std::vector<double>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i)
            out += ",";
        out += fmt_full(vs[i]);
    }
    return out;
}

} // namespace detail

/// Ordered `key = value` pairs from a config file body. Malformed lines and
/// duplicate keys are errors, naming the line or key.
inline std::vector<std::pair<std::string, std::string>> parse_kv_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::map<std::string, int> seen;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        if (seen.count(key))
            throw std::invalid_argument("duplicate key '" + key + "'");
        seen[key] = lineno;
        pairs.emplace_back(key, value);
    }
    return pairs;
}

inline std::vector<std::pair<std::string, std::string>> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream body;
    body << in.rdbuf();
    return parse_kv_text(body.str());
}

/// Apply one configuration key. Unknown keys are errors, not warnings.
inline void apply_config_key(ExperimentSpec& spec, const std::string& key,
                             const std::string& value) {
    SystemConfig& cfg = spec.base;
    if (key == "m") {
        cfg.M = static_cast<int>(detail::parse_long(key, value));
    } else if (key == "k") {
        cfg.K = static_cast<int>(detail::parse_long(key, value));
    } else if (key == "tau") {
        cfg.tau = static_cast<int>(detail::parse_long(key, value));
    } else if (key == "t_c") {
        cfg.T_c = static_cast<int>(detail::parse_long(key, value));
    } else if (key == "p_u") {
        cfg.p_u = detail::parse_double(key, value);
    } else if (key == "p_d") {
        cfg.p_d = detail::parse_double(key, value);
    } else if (key == "sigma_b2") {
        cfg.sigma_b2 = detail::parse_double(key, value);
    } else if (key == "sigma_k2") {
        cfg.sigma_k2 = detail::parse_double(key, value);
    } else if (key == "f_d") {
        cfg.f_D = detail::parse_double(key, value);
    } else if (key == "t_s") {
        cfg.T_s = detail::parse_double(key, value);
    } else if (key == "f_c") {
        cfg.f_c = detail::parse_double(key, value);
    } else if (key == "lo_topology") {
        if (value == "clo")
            cfg.lo_topology = LoTopology::CLO;
        else if (value == "ilo")
            cfg.lo_topology = LoTopology::ILO;
        else if (value == "slo")
            cfg.lo_topology = LoTopology::SLO;
        else
            throw std::invalid_argument("config key 'lo_topology': expected clo|ilo|slo");
    } else if (key == "sigma_phi_deg") {
        cfg.sigma_phi_deg = detail::parse_double_list(key, value);
    } else if (key == "sigma_varphi_deg") {
        cfg.sigma_varphi_deg = detail::parse_double_list(key, value);
    } else if (key == "cell_radius") {
        cfg.cell_radius = detail::parse_double(key, value);
    } else if (key == "guard_radius") {
        cfg.guard_radius = detail::parse_double(key, value);
    } else if (key == "shadow_std_db") {
        cfg.shadow_std_db = detail::parse_double(key, value);
    } else if (key == "path_loss_exp") {
        cfg.path_loss_exp = detail::parse_double(key, value);
    } else if (key == "antenna_correlation") {
        cfg.antenna_correlation = detail::parse_double(key, value);
    } else if (key == "aging_path") {
        if (value == "direct_jakes_lag")
            cfg.aging_path = AgingPath::DirectJakesLag;
        else if (value == "recursive_ar1")
            cfg.aging_path = AgingPath::RecursiveAr1;
        else
            throw std::invalid_argument(
                "config key 'aging_path': expected direct_jakes_lag|recursive_ar1");
    } else if (key == "kind") {
        if (value == "sweep_m")
            spec.kind = ExperimentKind::SweepM;
        else if (value == "sweep_doppler")
            spec.kind = ExperimentKind::SweepDoppler;
        else if (value == "power_for_target_rate")
            spec.kind = ExperimentKind::PowerForTargetRate;
        else if (value == "power_scaling")
            spec.kind = ExperimentKind::PowerScaling;
        else
            throw std::invalid_argument("config key 'kind': unknown experiment kind '" + value + "'");
    } else if (key == "grid") {
        spec.grid = detail::parse_double_list(key, value);
    } else if (key == "trials") {
        spec.trials = detail::parse_long(key, value);
    } else if (key == "seed") {
        spec.root_seed = detail::parse_u64(key, value);
    } else if (key == "phase_noise_cases") {
        std::vector<PhaseNoiseCase> cases;
        for (const std::string& tok : detail::split(value, ',')) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument(
                    "config key 'phase_noise_cases': expected phi:varphi pairs");
            PhaseNoiseCase pc;
            pc.sigma_phi_deg = detail::parse_double(key, detail::trim(tok.substr(0, colon)));
            pc.sigma_varphi_deg = detail::parse_double(key, detail::trim(tok.substr(colon + 1)));
            cases.push_back(pc);
        }
        if (cases.empty())
            throw std::invalid_argument("config key 'phase_noise_cases': empty list");
        spec.cases = std::move(cases);
    } else if (key == "target_rate") {
        spec.target_rate = detail::parse_double(key, value);
    } else if (key == "q_values") {
        spec.q_values = detail::parse_double_list(key, value);
    } else if (key == "name") {
        spec.name = value;
    } else if (key == "preset") {
        throw std::logic_error("preset key must be handled before other keys");
    } else {
        throw std::invalid_argument("unknown key '" + key + "'");
    }
}

/// Build a spec from ordered pairs. A `preset` key (anywhere) initializes
/// the whole spec; every other key then overrides field by field.
inline ExperimentSpec spec_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                                      bool paper_scale = false) {
    ExperimentSpec spec = preset("fig1", paper_scale);
    spec.name = "run";
    for (const auto& [key, value] : pairs)
        if (key == "preset")
            spec = preset(value, paper_scale);
    for (const auto& [key, value] : pairs)
        if (key != "preset")
            apply_config_key(spec, key, value);
    return spec;
}

/// Canonical echo of every resolved key, parseable back into the same spec.
inline std::vector<std::pair<std::string, std::string>> resolved_config(const ExperimentSpec& spec) {
    const SystemConfig& cfg = spec.base;
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("name", spec.name);
    out.emplace_back("kind", to_string(spec.kind));
    out.emplace_back("grid", detail::fmt_list(spec.grid));
    out.emplace_back("trials", std::to_string(spec.trials));
    out.emplace_back("seed", std::to_string(spec.root_seed));
    {
        std::string cases;
        for (std::size_t i = 0; i < spec.cases.size(); ++i) {
            if (i)
                cases += ",";
            cases += detail::fmt_full(spec.cases[i].sigma_phi_deg) + ":" +
                     detail::fmt_full(spec.cases[i].sigma_varphi_deg);
        }
        out.emplace_back("phase_noise_cases", cases);
    }
    out.emplace_back("target_rate", detail::fmt_full(spec.target_rate));
    out.emplace_back("q_values", detail::fmt_list(spec.q_values));
    out.emplace_back("m", std::to_string(cfg.M));
    out.emplace_back("k", std::to_string(cfg.K));
    out.emplace_back("tau", std::to_string(cfg.tau));
    out.emplace_back("t_c", std::to_string(cfg.T_c));
    out.emplace_back("p_u", detail::fmt_full(cfg.p_u));
    out.emplace_back("p_d", detail::fmt_full(cfg.p_d));
    out.emplace_back("sigma_b2", detail::fmt_full(cfg.sigma_b2));
    out.emplace_back("sigma_k2", detail::fmt_full(cfg.sigma_k2));
    out.emplace_back("f_d", detail::fmt_full(cfg.f_D));
    out.emplace_back("t_s", detail::fmt_full(cfg.T_s));
    out.emplace_back("f_c", detail::fmt_full(cfg.f_c));
    out.emplace_back("lo_topology", to_string(cfg.lo_topology));
    out.emplace_back("sigma_phi_deg", detail::fmt_list(cfg.sigma_phi_deg));
    out.emplace_back("sigma_varphi_deg", detail::fmt_list(cfg.sigma_varphi_deg));
    out.emplace_back("cell_radius", detail::fmt_full(cfg.cell_radius));
    out.emplace_back("guard_radius", detail::fmt_full(cfg.guard_radius));
    out.emplace_back("shadow_std_db", detail::fmt_full(cfg.shadow_std_db));
    out.emplace_back("path_loss_exp", detail::fmt_full(cfg.path_loss_exp));
    out.emplace_back("antenna_correlation", detail::fmt_full(cfg.antenna_correlation));
    out.emplace_back("aging_path", to_string(cfg.aging_path));
    return out;
}

/// CSV with the fixed schema sweep,case,source,user,rate,sum_se,ci_halfwidth
/// (12 significant digits, LF line endings, rows already sorted by the
/// experiment runners).
inline std::string csv_to_string(const ResultTable& table) {
    std::string out = "sweep,case,source,user,rate,sum_se,ci_halfwidth\n";
    char buf[160];
    for (const ResultRow& r : table.rows) {
        std::snprintf(buf, sizeof(buf), "%.12g,%s,%s,%d,%.12g,%.12g,%.12g\n", r.sweep,
                      r.case_label.c_str(), r.source.c_str(), r.user, r.rate, r.sum_se,
                      r.ci_halfwidth);
        out += buf;
    }
    return out;
}

inline void emit_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << csv_to_string(table);
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

struct RunManifest {
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::uint64_t root_seed = 0;
    std::string tool_version = kVersion;
    std::string wall_clock;
    std::vector<std::string> output_files;
};

/// Manifest = comment header (version, wall clock, outputs) + the resolved
/// config as plain parseable `key = value` lines.
inline void write_manifest(const RunManifest& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << "# agingsim run manifest\n";
    out << "# tool_version: agingsim " << m.tool_version << "\n";
    out << "# wall_clock: " << m.wall_clock << "\n";
    out << "# root_seed: " << m.root_seed << "\n";
    for (const std::string& f : m.output_files)
        out << "# output: " << f << "\n";
    out << "# config echo (re-runnable: agingsim run --config <this file>)\n";
    for (const auto& [key, value] : m.config_echo)
        out << key << " = " << value << "\n";
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace agingsim

#endif
