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
// Closed-form (deterministic-equivalent) engine for the downlink SINR with
// MRT under joint Doppler/phase-noise aging:
//
//   gamma_bar_{k,n} = e^{-2(sv_k + sp) n} delta_k^2
//                     / ( delta'_k/M + sigma_k^2/(p_d lambda_bar M)
//                         + sum_{i != k} delta''_{i,k}/M )
//
// with delta_k = (1/M) tr A_n^2 D_k,
//      delta'_k = (1/M) tr A_n^2 D_k (R_k - A_n^2 D_k),
//      delta''_{i,k} = (1/M) tr A_i^2 D_i R_k,
//      lambda_bar = ( (1/K) sum_i delta_i )^{-1},
// and sv_k, sp the user/BS phase increment variances in rad^2. The decay
// prefactor is kept explicit on top of the decay already inside A_n^2 (the
// closed form is asymptotic in M, not in the decay exponent); the
// Monte-Carlo engine is the ground truth for the exponent and the
// acceptance suite logs the measured gap.
//
// The closed form requires a common BS phase variance (CLO/ILO, or SLO with
// equal entries), in which case every A is a scaled identity and all traces
// reduce to scalars; heterogeneous SLO setups are simulation-only.

#ifndef AGINGSIM_DET_EQUIV_HPP
#define AGINGSIM_DET_EQUIV_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "agingsim/aging_operator.hpp"
#include "agingsim/config.hpp"
#include "agingsim/estimation.hpp"
#include "agingsim/scenario.hpp"
#include "agingsim/sinr_report.hpp"

namespace agingsim {

struct DeTerms {
    int lag = 0;
    double lambda_bar = 0.0;
    std::vector<double> delta;                    // K
    std::vector<double> delta_prime;              // K
    std::vector<std::vector<double>> delta_dprime; // [i][k]
    std::vector<double> phase_decay;              // per user, e^{-2(sv_k + sp) n}
    std::vector<double> alpha;                    // per user, scalar A_n
};

inline DeTerms de_terms(const SystemConfig& cfg, const CorrelationSet& corr,
                        const std::vector<EstCovariance>& d, int n) {
    if (!cfg.homogeneous_bs_phase())
        throw std::invalid_argument("closed form requires common sigma_phi^2");
    if (corr.users() != cfg.K || d.size() != static_cast<std::size_t>(cfg.K))
        throw std::invalid_argument("de_terms: dimension mismatch");

    const std::size_t K = static_cast<std::size_t>(cfg.K);
    const double inv_m = 1.0 / static_cast<double>(cfg.M);
    const double sp = cfg.sigma_phi2(0);

    DeTerms t;
    t.lag = n;
    t.delta.resize(K);
    t.delta_prime.resize(K);
    t.delta_dprime.assign(K, std::vector<double>(K, 0.0));
    t.phase_decay.resize(K);
    t.alpha.resize(K);

    const double rho = jakes_rho(cfg, n);
    for (std::size_t k = 0; k < K; ++k) {
        const double sv = cfg.sigma_varphi2(static_cast<int>(k));
        t.alpha[k] = rho * std::exp(-0.5 * (sv + sp) * static_cast<double>(n));
        t.phase_decay[k] = std::exp(-2.0 * (sv + sp) * static_cast<double>(n));
    }

    for (std::size_t k = 0; k < K; ++k) {
        const double a2 = t.alpha[k] * t.alpha[k];
        const CorrMatrix& rk = corr.R[k];
        const EstCovariance& dk = d[k];
        if (rk.scalar && dk.scalar) {
            t.delta[k] = a2 * dk.d;
            t.delta_prime[k] = a2 * dk.d * (rk.beta - a2 * dk.d);
        } else {
            const CMat dm = dk.dense();
            const CMat rm = rk.dense();
            const double tr_d = dm.trace().real();
            const double tr_dr = (dm * rm).trace().real();
            const double tr_dd = (dm * dm).trace().real();
            t.delta[k] = a2 * inv_m * tr_d;
            t.delta_prime[k] = a2 * inv_m * (tr_dr - a2 * tr_dd);
        }
    }
    for (std::size_t i = 0; i < K; ++i) {
        const double a2 = t.alpha[i] * t.alpha[i];
        for (std::size_t k = 0; k < K; ++k) {
            const CorrMatrix& rk = corr.R[k];
            const EstCovariance& di = d[i];
            if (rk.scalar && di.scalar) {
                t.delta_dprime[i][k] = a2 * di.d * rk.beta;
            } else {
                t.delta_dprime[i][k] = a2 * inv_m * (di.dense() * rk.dense()).trace().real();
            }
        }
    }

    double mean_delta = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        mean_delta += t.delta[k];
    mean_delta /= static_cast<double>(K);
    if (!(mean_delta > 0.0))
        throw std::invalid_argument("zero effective channel");
    t.lambda_bar = 1.0 / mean_delta;
    return t;
}

/// Deterministic equivalent of the SINR for user k. lambda_bar is
/// eliminated algebraically: sigma_k^2/(p_d lambda_bar) equals
/// (sigma_k^2/p_d) (1/K) sum_i delta_i, which is exact whenever lambda_bar
/// is finite and avoids a 0/0 as the aging operator approaches zero.
inline double de_sinr(const DeTerms& t, const SystemConfig& cfg, int k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    const std::size_t K = t.delta.size();
    double mean_delta = 0.0;
    for (std::size_t i = 0; i < K; ++i)
        mean_delta += t.delta[i];
    mean_delta /= static_cast<double>(K);

    double denom = t.delta_prime[kk] + (cfg.sigma_k2 / cfg.p_d) * mean_delta;
    for (std::size_t i = 0; i < K; ++i)
        if (i != kk)
            denom += t.delta_dprime[i][kk];
    if (!(denom > 0.0))
        throw std::invalid_argument("de_sinr: zero denominator");
    const double num = t.phase_decay[kk] * t.delta[kk] * t.delta[kk] * static_cast<double>(cfg.M);
    return num / denom;
}

/// Closed-form report across the data phase (or a chosen subset of absolute
/// symbol times).
inline SinrReport de_sinr_report(const SystemConfig& cfg, const CorrelationSet& corr,
                                 const std::vector<int>& lags) {
    const std::vector<EstCovariance> d = est_covariances(cfg, corr);
    SinrReport rep;
    rep.source = SinrSource::DeterministicEquivalent;
    rep.M = cfg.M;
    rep.K = cfg.K;
    rep.tau = cfg.tau;
    rep.T_c = cfg.T_c;
    rep.lags = lags;
    rep.comp.resize(static_cast<std::size_t>(cfg.K) * lags.size());
    rep.lambda_bar.resize(lags.size());
    rep.rate.assign(static_cast<std::size_t>(cfg.K), 0.0);
    rep.rate_ci.assign(static_cast<std::size_t>(cfg.K), 0.0);

    for (std::size_t j = 0; j < lags.size(); ++j) {
        const DeTerms t = de_terms(cfg, corr, d, lags[j]);
        rep.lambda_bar[j] = t.lambda_bar;
        for (int k = 0; k < cfg.K; ++k) {
            SinrComponents c;
            const std::size_t kk = static_cast<std::size_t>(k);
            c.signal = t.phase_decay[kk] * t.delta[kk] * t.delta[kk];
            c.bf_variance = t.delta_prime[kk] / cfg.M;
            c.noise = cfg.sigma_k2 / (cfg.p_d * t.lambda_bar * cfg.M);
            double cross = 0.0;
            for (std::size_t i = 0; i < t.delta.size(); ++i)
                if (i != kk)
                    cross += t.delta_dprime[i][kk];
            c.cross_user = cross / cfg.M;
            rep.comp[kk * lags.size() + j] = c;
            rep.rate[kk] += std::log2(1.0 + c.gamma()) / static_cast<double>(cfg.T_c);
        }
    }
    rep.sum_se = sum_spectral_efficiency(rep);
    return rep;
}

/// Deterministic block rate over the whole data phase, n = tau+1 .. T_c
/// (T_c - tau symbols, prefactor 1/T_c).
inline SinrReport de_rate(const SystemConfig& cfg, const CorrelationSet& corr) {
    return de_sinr_report(cfg, corr, cfg.data_lags());
}

/// Power-scaling SINR under p_u = E_u/M^q, p_d = E_d/M^q:
///
///   q != 1/2:  (tau E_d E_u / (sigma_k^4 M^{2q-1})) J0^2(2 pi f_D T_s n)
///              e^{-3(sv_k + sp) n} [R_k^2]_{mm}
///   q  = 1/2:  the finite limit with prefactor tau^2 E_d E_u / sigma_k^4.
///
/// The two branches differ by a factor tau at q = 1/2 and coincide for
/// tau = 1. Meaningful for collocated antennas
/// with a scalar aging operator (CLO/ILO) and sigma_b = sigma_k.
inline double power_scaling_sinr(const SystemConfig& cfg, const CorrMatrix& rk, int k, int n,
                                 double q, double e_u, double e_d, int m) {
    if (!(q > 0.0))
        throw std::invalid_argument("power_scaling_sinr: q must be > 0");
    if (!cfg.homogeneous_bs_phase())
        throw std::invalid_argument("power_scaling_sinr: requires common sigma_phi^2");
    const double rho = jakes_rho(cfg, n);
    const double decay =
        std::exp(-3.0 * (cfg.sigma_varphi2(k) + cfg.sigma_phi2(0)) * static_cast<double>(n));
    const double sigma4 = cfg.sigma_k2 * cfg.sigma_k2;
    const double tau = static_cast<double>(cfg.tau);

    double r2mm = 0.0;
    if (rk.scalar) {
        r2mm = rk.beta * rk.beta;
    } else {
        const std::size_t mm = static_cast<std::size_t>(m);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < rk.R.cols(); ++j)
            acc += rk.R(mm, j) * rk.R(j, mm);
        r2mm = acc.real();
    }

    const double common = rho * rho * decay * e_d * e_u / sigma4 * r2mm;
    if (q == 0.5)
        return tau * tau * common;
    return tau * common / std::pow(static_cast<double>(cfg.M), 2.0 * q - 1.0);
}

} // namespace agingsim

#endif
