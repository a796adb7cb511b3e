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
// Named experiments over the two engines. One user drop is made per
// experiment (stream root.child(0)) and shared across the grid and the
// phase-noise cases, so curves differ only through the swept variable.
// Monte-Carlo streams are root.child(1).child(grid_index).child(case_index),
// giving byte-identical results for any thread count or execution order.

#ifndef AGINGSIM_EXPERIMENTS_HPP
#define AGINGSIM_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "agingsim/det_equiv.hpp"
#include "agingsim/downlink.hpp"
#include "agingsim/scenario.hpp"
#include "agingsim/sinr_report.hpp"

namespace agingsim {

enum class ExperimentKind { SweepM, SweepDoppler, PowerForTargetRate, PowerScaling };

inline std::string to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::SweepM: return "sweep_m";
    case ExperimentKind::SweepDoppler: return "sweep_doppler";
    case ExperimentKind::PowerForTargetRate: return "power_for_target_rate";
    default: return "power_scaling";
    }
}

struct PhaseNoiseCase {
    double sigma_phi_deg = 0.0;
    double sigma_varphi_deg = 0.0;

    std::string label() const {
        auto fmt = [](double v) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", v);
            return std::string(buf);
        };
        return "pn" + fmt(sigma_phi_deg) + "-" + fmt(sigma_varphi_deg);
    }
};

inline std::vector<PhaseNoiseCase> default_phase_cases() {
    return {{0.0, 0.0}, {0.0, 2.0}, {2.0, 2.0}};
}

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::SweepM;
    std::vector<double> grid; // M values, f_D T_s values, or M values
    SystemConfig base;
    long trials = 200;
    std::uint64_t root_seed = 1;
    std::vector<PhaseNoiseCase> cases = default_phase_cases();
    double target_rate = 1.0;                 // PowerForTargetRate
    std::vector<double> q_values = {0.4, 0.5, 0.6}; // PowerScaling
    int threads = 1;
    std::string name = "experiment";

    void validate(bool for_publish = false) const {
        base.validate();
        if (grid.empty())
            throw std::invalid_argument("experiment grid must be nonempty");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw std::invalid_argument("experiment grid must be strictly increasing");
        if (trials < 2)
            throw std::invalid_argument("trials must be >= 2");
        if (for_publish && trials < 100)
            throw std::invalid_argument("trials must be >= 100 for published CSV output");
        if (cases.empty())
            throw std::invalid_argument("at least one phase-noise case is required");
        if (kind == ExperimentKind::PowerForTargetRate && target_rate < 0.0)
            throw std::invalid_argument("target_rate must be >= 0");
        if (kind == ExperimentKind::PowerScaling) {
            if (q_values.empty())
                throw std::invalid_argument("q_values must be nonempty");
            for (double q : q_values)
                if (!(q > 0.0))
                    throw std::invalid_argument("q_values must be > 0");
        }
    }
};

struct ResultRow {
    double sweep = 0.0;
    std::string case_label;
    std::string source; // "MC" or "DE"
    int user = 0;
    double rate = 0.0;
    double sum_se = 0.0;
    double ci_halfwidth = 0.0;
};

struct ResultTable {
    std::vector<ResultRow> rows;

    void sort_rows() {
        std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
            return std::tie(a.sweep, a.case_label, a.source, a.user) <
                   std::tie(b.sweep, b.case_label, b.source, b.user);
        });
    }
};

namespace detail {

inline SystemConfig apply_case(SystemConfig cfg, const PhaseNoiseCase& pc) {
    if (cfg.lo_topology == LoTopology::SLO)
        cfg.sigma_phi_deg.assign(static_cast<std::size_t>(cfg.M), pc.sigma_phi_deg);
    else
        cfg.sigma_phi_deg = {pc.sigma_phi_deg};
    cfg.sigma_varphi_deg = {pc.sigma_varphi_deg};
    return cfg;
}

inline bool aging_free(const SystemConfig& cfg) {
    if (cfg.f_D != 0.0)
        return false;
    for (double v : cfg.sigma_phi_deg)
        if (v != 0.0)
            return false;
    for (double v : cfg.sigma_varphi_deg)
        if (v != 0.0)
            return false;
    return true;
}

/// Monte-Carlo rate over the whole data phase. When nothing ages (static,
/// no phase noise) the SINR is symbol-invariant, so one symbol is evaluated
/// and the rate sum collapses to (T_c - tau) equal terms.
inline SinrReport mc_rate_report(const SystemConfig& cfg, const CorrelationSet& corr, long trials,
                                 const RngStream& stream_base, int threads) {
    McOptions opts;
    opts.trials = trials;
    opts.stream_base = stream_base;
    opts.threads = threads;
    if (aging_free(cfg)) {
        opts.lags = {cfg.tau + 1};
        SinrReport rep = mc_evaluate(cfg, corr, opts).report;
        const double scale = static_cast<double>(cfg.data_symbols());
        for (std::size_t k = 0; k < rep.rate.size(); ++k) {
            rep.rate[k] *= scale;
            rep.rate_ci[k] *= scale;
        }
        rep.sum_se = sum_spectral_efficiency(rep);
        return rep;
    }
    opts.lags = cfg.data_lags();
    return mc_evaluate(cfg, corr, opts).report;
}

inline void append_report(ResultTable& table, double sweep, const std::string& label,
                          const SinrReport& rep) {
    for (std::size_t k = 0; k < rep.rate.size(); ++k) {
        ResultRow row;
        row.sweep = sweep;
        row.case_label = label;
        row.source = to_string(rep.source);
        row.user = static_cast<int>(k);
        row.rate = rep.rate[k];
        row.sum_se = rep.sum_se;
        row.ci_halfwidth = rep.rate_ci[k];
        table.rows.push_back(std::move(row));
    }
}

inline int grid_as_antennas(double v) {
    const int m = static_cast<int>(v);
    if (static_cast<double>(m) != v || m < 1)
        throw std::invalid_argument("antenna grid values must be positive integers");
    return m;
}

} // namespace detail

/// Sum spectral efficiency versus the number of BS antennas in a static
/// environment, Monte-Carlo and closed form side by side.
inline ResultTable run_sweep_m(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.kind != ExperimentKind::SweepM)
        throw std::invalid_argument("run_sweep_m: wrong experiment kind");
    const RngStream root(spec.root_seed);
    SystemConfig base = spec.base;
    base.f_D = 0.0; // static environment
    RngStream drop_stream = root.child(0);
    const UserDrop drop = drop_users(base, drop_stream);

    ResultTable table;
    for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
        SystemConfig cfg = base;
        cfg.M = detail::grid_as_antennas(spec.grid[gi]);
        if (cfg.lo_topology == LoTopology::SLO)
            cfg.sigma_phi_deg.assign(static_cast<std::size_t>(cfg.M), cfg.sigma_phi_deg[0]);
        const CorrelationSet corr = build_correlation(cfg, drop);
        for (std::size_t cj = 0; cj < spec.cases.size(); ++cj) {
            const SystemConfig cfgc = detail::apply_case(cfg, spec.cases[cj]);
            const std::string label = spec.cases[cj].label();
            detail::append_report(table, spec.grid[gi], label, de_rate(cfgc, corr));
            detail::append_report(table, spec.grid[gi], label,
                                  detail::mc_rate_report(cfgc, corr, spec.trials,
                                                         root.child(1).child(gi).child(cj),
                                                         spec.threads));
        }
    }
    table.sort_rows();
    return table;
}

/// Sum spectral efficiency versus the normalized Doppler shift f_D T_s at
/// fixed M, plus the imperfect-CSI / no-aging reference line.
inline ResultTable run_sweep_doppler(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.kind != ExperimentKind::SweepDoppler)
        throw std::invalid_argument("run_sweep_doppler: wrong experiment kind");
    const RngStream root(spec.root_seed);
    RngStream drop_stream = root.child(0);
    const UserDrop drop = drop_users(spec.base, drop_stream);
    const CorrelationSet corr = build_correlation(spec.base, drop);

    // reference: imperfect CSI, no aging at all
    SystemConfig ref_cfg = detail::apply_case(spec.base, PhaseNoiseCase{0.0, 0.0});
    ref_cfg.f_D = 0.0;
    const SinrReport ref = de_rate(ref_cfg, corr);

    ResultTable table;
    for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
        const double fdts = spec.grid[gi];
        if (fdts < 0.0)
            throw std::invalid_argument("normalized Doppler must be >= 0");
        detail::append_report(table, fdts, "noaging-ref", ref);
        for (std::size_t cj = 0; cj < spec.cases.size(); ++cj) {
            SystemConfig cfgc = detail::apply_case(spec.base, spec.cases[cj]);
            cfgc.f_D = fdts / cfgc.T_s;
            const std::string label = spec.cases[cj].label();
            detail::append_report(table, fdts, label, de_rate(cfgc, corr));
            detail::append_report(table, fdts, label,
                                  detail::mc_rate_report(cfgc, corr, spec.trials,
                                                         root.child(1).child(gi).child(cj),
                                                         spec.threads));
        }
    }
    table.sort_rows();
    return table;
}

/// Smallest common transmit power p = p_u = p_d reaching the target mean
/// per-user rate on the closed-form path, by bisection in log power.
/// Scaling the pilot and data powers together is what produces the
/// classic ~1.5 dB saving per antenna doubling.
struct PowerSearchResult {
    double sweep = 0.0;
    std::string case_label;
    double required_power = 0.0; // linear
    double achieved_rate = 0.0;
};

inline double de_mean_rate_at_power(const SystemConfig& base, const CorrelationSet& corr,
                                    double power) {
    SystemConfig cfg = base;
    cfg.p_u = power;
    cfg.p_d = power;
    const SinrReport rep = de_rate(cfg, corr);
    return rep.sum_se / static_cast<double>(cfg.K);
}

inline std::vector<PowerSearchResult> find_power_for_rate_detail(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.kind != ExperimentKind::PowerForTargetRate)
        throw std::invalid_argument("find_power_for_rate: wrong experiment kind");
    const RngStream root(spec.root_seed);
    RngStream drop_stream = root.child(0);
    SystemConfig base = spec.base;
    base.f_D = 0.0; // static environment
    const UserDrop drop = drop_users(base, drop_stream);

    const double lo_edge = 1e-6, hi_edge = 1e6;
    std::vector<PowerSearchResult> results;
    for (double sweep : spec.grid) {
        SystemConfig cfg = base;
        cfg.M = detail::grid_as_antennas(sweep);
        if (cfg.lo_topology == LoTopology::SLO)
            cfg.sigma_phi_deg.assign(static_cast<std::size_t>(cfg.M), cfg.sigma_phi_deg[0]);
        const CorrelationSet corr = build_correlation(cfg, drop);
        for (const PhaseNoiseCase& pc : spec.cases) {
            const SystemConfig cfgc = detail::apply_case(cfg, pc);
            const double at_lo = de_mean_rate_at_power(cfgc, corr, lo_edge);
            PowerSearchResult r;
            r.sweep = sweep;
            r.case_label = pc.label();
            if (at_lo >= spec.target_rate) {
                r.required_power = lo_edge;
                r.achieved_rate = at_lo;
                results.push_back(r);
                continue;
            }
            if (de_mean_rate_at_power(cfgc, corr, hi_edge) < spec.target_rate)
                throw std::invalid_argument("target rate infeasible");
            double llo = std::log10(lo_edge), lhi = std::log10(hi_edge);
            double rate_mid = 0.0, mid = 0.0;
            for (int it = 0; it < 60; ++it) {
                mid = 0.5 * (llo + lhi);
                rate_mid = de_mean_rate_at_power(cfgc, corr, std::pow(10.0, mid));
                if (std::abs(rate_mid - spec.target_rate) <= 1e-4)
                    break;
                (rate_mid < spec.target_rate ? llo : lhi) = mid;
            }
            r.required_power = std::pow(10.0, mid);
            r.achieved_rate = rate_mid;
            results.push_back(r);
        }
    }
    return results;
}

/// Table form: `rate` holds the required power (linear), `sum_se` the same
/// value in dB.
inline ResultTable find_power_for_rate(const ExperimentSpec& spec) {
    ResultTable table;
    for (const PowerSearchResult& r : find_power_for_rate_detail(spec)) {
        ResultRow row;
        row.sweep = r.sweep;
        row.case_label = r.case_label;
        row.source = "DE";
        row.user = 0;
        row.rate = r.required_power;
        row.sum_se = 10.0 * std::log10(r.required_power);
        row.ci_halfwidth = 0.0;
        table.rows.push_back(row);
    }
    table.sort_rows();
    return table;
}

/// Full-DE power-scaling verification: gamma_bar under p_u = E_u / M^q,
/// p_d = E_d / M^q across the antenna grid, classified by the log-log slope
/// between the last two grid points (growing / converging / vanishing with
/// threshold 0.1, halfway to the asymptotic |1 - 2q| = 0.2 at q = 0.4/0.6).
struct ScalingCurve {
    double q = 0.0;
    std::vector<int> antennas;
    std::vector<double> gamma;
    double slope = 0.0;
    std::string classification; // "growing" | "converging" | "vanishing"
    double limit_q_half = 0.0;  // closed-form q = 1/2 limit for the first user
};

struct ScalingOutcome {
    std::vector<ScalingCurve> curves;
    ResultTable table;
};

inline ScalingOutcome verify_power_scaling(const ExperimentSpec& spec,
                                           const std::vector<double>& q_values) {
    spec.validate();
    if (spec.kind != ExperimentKind::PowerScaling)
        throw std::invalid_argument("verify_power_scaling: wrong experiment kind");
    if (spec.base.antenna_correlation != 0.0)
        throw std::invalid_argument("verify_power_scaling: requires scalar R_k");
    if (spec.base.lo_topology == LoTopology::SLO && !spec.base.homogeneous_bs_phase())
        throw std::invalid_argument("verify_power_scaling: requires CLO/ILO");
    if (spec.grid.size() < 2)
        throw std::invalid_argument("verify_power_scaling: needs at least two grid points");

    const RngStream root(spec.root_seed);
    RngStream drop_stream = root.child(0);
    const UserDrop drop = drop_users(spec.base, drop_stream);
    const double e_u = spec.base.p_u;
    const double e_d = spec.base.p_d;
    const int lag = 1;

    ScalingOutcome out;
    for (double q : q_values) {
        ScalingCurve curve;
        curve.q = q;
        for (double sweep : spec.grid) {
            SystemConfig cfg = spec.base;
            cfg.M = detail::grid_as_antennas(sweep);
            cfg.p_u = e_u / std::pow(static_cast<double>(cfg.M), q);
            cfg.p_d = e_d / std::pow(static_cast<double>(cfg.M), q);
            const CorrelationSet corr = CorrelationSet::scalar(cfg.M, drop.beta);
            const DeTerms t = de_terms(cfg, corr, est_covariances(cfg, corr), lag);
            curve.antennas.push_back(cfg.M);
            curve.gamma.push_back(de_sinr(t, cfg, 0));
        }
        const std::size_t last = curve.gamma.size() - 1;
        curve.slope = std::log(curve.gamma[last] / curve.gamma[last - 1]) /
                      std::log(static_cast<double>(curve.antennas[last]) /
                               static_cast<double>(curve.antennas[last - 1]));
        curve.classification =
            curve.slope > 0.1 ? "growing" : (curve.slope < -0.1 ? "vanishing" : "converging");
        {
            SystemConfig cfg = spec.base;
            cfg.M = detail::grid_as_antennas(spec.grid.back());
            const CorrMatrix rk = CorrMatrix::make_scalar(cfg.M, drop.beta[0]);
            curve.limit_q_half = power_scaling_sinr(cfg, rk, 0, lag, 0.5, e_u, e_d, 0);
        }
        out.curves.push_back(std::move(curve));
    }

    for (const ScalingCurve& c : out.curves) {
        char label[32];
        std::snprintf(label, sizeof(label), "q%g", c.q);
        for (std::size_t i = 0; i < c.antennas.size(); ++i) {
            ResultRow row;
            row.sweep = c.antennas[i];
            row.case_label = label;
            row.source = "DE";
            row.user = 0;
            row.rate = c.gamma[i];
            row.sum_se = c.slope;
            row.ci_halfwidth = 0.0;
            out.table.rows.push_back(row);
        }
    }
    out.table.sort_rows();
    return out;
}

/// Dispatch used by the command-line front end.
inline ResultTable run_experiment(const ExperimentSpec& spec) {
    switch (spec.kind) {
    case ExperimentKind::SweepM: return run_sweep_m(spec);
    case ExperimentKind::SweepDoppler: return run_sweep_doppler(spec);
    case ExperimentKind::PowerForTargetRate: return find_power_for_rate(spec);
    case ExperimentKind::PowerScaling: return verify_power_scaling(spec, spec.q_values).table;
    }
    throw std::logic_error("unreachable");
}

} // namespace agingsim

#endif
