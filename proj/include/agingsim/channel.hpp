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

#ifndef AGINGSIM_CHANNEL_HPP
#define AGINGSIM_CHANNEL_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "agingsim/aging_operator.hpp"
#include "agingsim/bessel.hpp"
#include "agingsim/config.hpp"
#include "agingsim/phase_noise.hpp"
#include "agingsim/scenario.hpp"

namespace agingsim {

/// Jakes temporal correlation at lag n: rho_n = J0(2 pi f_D T_s n).
inline double jakes_rho(const SystemConfig& cfg, int n) {
    return bessel_j0(2.0 * kPi * cfg.f_D * cfg.T_s * static_cast<double>(n));
}

/// True channels h_{k,n} and effective channels g_{k,n} = Theta_{k,n} h_{k,n}
/// for all symbols of one coherence block. h evolves by the first-order
/// recursion whose one-step correlation is rho_1 = J0(2 pi f_D T_s); the
/// recursion is variance-preserving, so every h_{k,n} keeps covariance R_k.
struct ChannelBlock {
    int M = 0, K = 0, T_c = 0;
    std::vector<CVec> h; // [k * (T_c+1) + n]
    std::vector<CVec> g;

    const CVec& h_at(int k, int n) const {
        return h[static_cast<std::size_t>(k) * (T_c + 1) + static_cast<std::size_t>(n)];
    }
    const CVec& g_at(int k, int n) const {
        return g[static_cast<std::size_t>(k) * (T_c + 1) + static_cast<std::size_t>(n)];
    }
};

inline ChannelBlock generate_block(const SystemConfig& cfg, const CorrelationSet& corr,
                                   const PhaseState& phase, RngStream& stream) {
    if (corr.users() != cfg.K)
        throw std::invalid_argument("generate_block: correlation set size mismatch");
    if (phase.M != cfg.M || phase.K != cfg.K || phase.T_c != cfg.T_c)
        throw std::invalid_argument("generate_block: phase state dimension mismatch");

    ChannelBlock block;
    block.M = cfg.M;
    block.K = cfg.K;
    block.T_c = cfg.T_c;
    const std::size_t cols = static_cast<std::size_t>(cfg.T_c) + 1;
    block.h.resize(static_cast<std::size_t>(cfg.K) * cols);
    block.g.resize(static_cast<std::size_t>(cfg.K) * cols);

    const double rho1 = jakes_rho(cfg, 1);
    const double innov = std::sqrt(std::max(0.0, 1.0 - rho1 * rho1));

    for (int k = 0; k < cfg.K; ++k) {
        const CorrMatrix& rk = corr.R[static_cast<std::size_t>(k)];
        const std::size_t row = static_cast<std::size_t>(k) * cols;
        block.h[row] = rk.sample(stream);
        for (int n = 1; n <= cfg.T_c; ++n) {
            const CVec& prev = block.h[row + static_cast<std::size_t>(n - 1)];
            CVec cur(prev.size());
            if (innov == 0.0) {
                cur = prev;
            } else {
                const CVec w = rk.sample(stream);
                for (std::size_t i = 0; i < cur.size(); ++i)
                    cur[i] = rho1 * prev[i] + innov * w[i];
            }
            block.h[row + static_cast<std::size_t>(n)] = std::move(cur);
        }
        for (int n = 0; n <= cfg.T_c; ++n) {
            const CVec& hn = block.h[row + static_cast<std::size_t>(n)];
            CVec gn(hn.size());
            for (int m = 0; m < cfg.M; ++m)
                gn[static_cast<std::size_t>(m)] =
                    std::polar(1.0, phase.theta(k, m, n)) * hn[static_cast<std::size_t>(m)];
            block.g[row + static_cast<std::size_t>(n)] = std::move(gn);
        }
    }
    return block;
}

/// Draw h_n given h_0 with the exact Jakes lag correlation rho_n; this is
/// the two-point law the closed forms assume (the lag statistics matter,
/// the joint law across different lags does not).
inline CVec sample_lag_pair(const CorrMatrix& rk, double rho_n, const CVec& h0,
                            RngStream& stream) {
    if (h0.size() != static_cast<std::size_t>(rk.M))
        throw std::invalid_argument("sample_lag_pair: dimension mismatch");
    const double innov = std::sqrt(std::max(0.0, 1.0 - rho_n * rho_n));
    if (innov == 0.0) {
        CVec out(h0);
        if (rho_n < 0.0)
            for (auto& v : out)
                v = -v;
        return out;
    }
    CVec out = rk.sample(stream);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = rho_n * h0[i] + innov * out[i];
    return out;
}

/// Statistical aging model g_n = A_n g_0 + e, e ~ CN(0, R - A R A^H).
/// Used to cross-validate the symbol-level simulation against the model the
/// estimator is derived from. Throws if R - A R A^H is indefinite (possible
/// for heterogeneous SLO decay combined with strong antenna correlation).
inline CVec aged_channel_direct(const CVec& g0, const AgingOperator& a, const CorrMatrix& rk,
                                RngStream& stream) {
    const std::size_t m = static_cast<std::size_t>(rk.M);
    if (g0.size() != m || a.diag.size() != m)
        throw std::invalid_argument("aged_channel_direct: dimension mismatch");

    CVec out(m);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = a.diag[i] * g0[i];

    if (rk.scalar && a.is_uniform()) {
        const double al = a.diag[0];
        const double innov_var = rk.beta * std::max(0.0, 1.0 - al * al);
        const double s = std::sqrt(innov_var);
        for (std::size_t i = 0; i < m; ++i)
            out[i] += s * stream.next_cnormal();
        return out;
    }

    const CMat r = rk.dense();
    CMat cov(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            cov(i, j) = r(i, j) * (1.0 - a.diag[i] * a.diag[j]);
    CVec e;
    try {
        e = sample_circular_gaussian(stream, m, cov);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid aging operator for this R_k");
    }
    for (std::size_t i = 0; i < m; ++i)
        out[i] += e[i];
    return out;
}

} // namespace agingsim

#endif
