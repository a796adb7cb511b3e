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

#ifndef AGINGSIM_ESTIMATION_HPP
#define AGINGSIM_ESTIMATION_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "agingsim/aging_operator.hpp"
#include "agingsim/channel.hpp"
#include "agingsim/config.hpp"
#include "agingsim/la.hpp"
#include "agingsim/phase_noise.hpp"
#include "agingsim/scenario.hpp"

namespace agingsim {

/// LMMSE estimation covariance D_k = (I + (sigma_b^2/p_p) R_k^{-1})^{-1} R_k,
/// stored scalar (d * I) when R_k is scalar.
struct EstCovariance {
    bool scalar = true;
    double d = 0.0; // diagonal value when scalar
    CMat D;         // dense only
    int M = 0;

    double trace() const { return scalar ? d * M : D.trace().real(); }
    double diag_entry(int m) const {
        return scalar ? d : D(static_cast<std::size_t>(m), static_cast<std::size_t>(m)).real();
    }
    CMat dense() const { return scalar ? CMat::scaled_identity(static_cast<std::size_t>(M), d) : D; }
};

/// Joint channel-phase-noise LMMSE estimates for all users at the
/// estimation instant n = 0.
struct ChannelEstimate {
    std::vector<CVec> g_hat;      // size K
    std::vector<EstCovariance> D; // size K
    double p_p = 0.0;             // pilot power tau * p_u
};

/// LMMSE filter W with g_hat = W y. Uses the identity
/// (I + c R^{-1})^{-1} = (R + c I)^{-1} R, solved via Cholesky rather than
/// forming any inverse. R and (R + cI) commute, so W is Hermitian.
struct LmmseFilter {
    bool scalar = true;
    double w = 0.0; // d / beta when scalar
    CMat W;
    EstCovariance D;

    CVec apply(const CVec& y) const {
        if (scalar) {
            CVec out(y);
            for (auto& v : out)
                v *= w;
            return out;
        }
        return W * y;
    }
};

inline LmmseFilter lmmse_filter(const CorrMatrix& rk, double sigma_b2, double p_p) {
    if (!(p_p > 0.0))
        throw std::invalid_argument("lmmse_filter: pilot power must be > 0");
    const double c = sigma_b2 / p_p;
    LmmseFilter f;
    f.D.M = rk.M;
    if (rk.scalar) {
        if (!(rk.beta > 0.0))
            throw std::invalid_argument("lmmse_filter: singular R_k");
        f.scalar = true;
        f.w = rk.beta / (rk.beta + c);
        f.D.scalar = true;
        f.D.d = rk.beta * f.w; // beta^2 / (beta + c)
        return f;
    }
    f.scalar = false;
    const std::size_t m = static_cast<std::size_t>(rk.M);
    CMat shifted = rk.R;
    for (std::size_t i = 0; i < m; ++i)
        shifted(i, i) += c;
    f.W = solve_hermitian_pd(shifted, rk.R); // (R + cI)^{-1} R
    f.D.scalar = false;
    f.D.D = rk.R * f.W; // R (R + cI)^{-1} R
    return f;
}

/// Despread pilot observation y~_k = Theta_{k,0} h_{k,0} + z~ / sqrt(p_p);
/// the pilot matrix with Psi Psi^H = I_K is eliminated analytically and the
/// phase noise is held at its n = 0 value during training.
inline std::vector<CVec> pilot_observe(const SystemConfig& cfg, const ChannelBlock& block,
                                       const PhaseState& phase, RngStream& stream) {
    if (cfg.tau < cfg.K)
        throw std::invalid_argument("pilot shortage");
    (void)phase; // g_at(k,0) already carries Theta_{k,0}
    const double noise_scale = std::sqrt(cfg.sigma_b2 / cfg.pilot_power());
    std::vector<CVec> obs(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k) {
        CVec y = block.g_at(k, 0);
        for (auto& v : y)
            v += noise_scale * stream.next_cnormal();
        obs[static_cast<std::size_t>(k)] = std::move(y);
    }
    return obs;
}

/// Joint channel/phase-noise LMMSE estimator for one user:
/// g_hat = (I + (sigma_b^2/p_p) R_k^{-1})^{-1} y~.
inline std::pair<CVec, EstCovariance> lmmse_estimate(const CVec& obs, const CorrMatrix& rk,
                                                     double sigma_b2, double p_p) {
    const LmmseFilter f = lmmse_filter(rk, sigma_b2, p_p);
    return {f.apply(obs), f.D};
}

/// Full pilot phase: observe, filter, collect D_k.
inline ChannelEstimate estimate_all(const SystemConfig& cfg, const ChannelBlock& block,
                                    const PhaseState& phase, const CorrelationSet& corr,
                                    RngStream& stream) {
    ChannelEstimate est;
    est.p_p = cfg.pilot_power();
    const std::vector<CVec> obs = pilot_observe(cfg, block, phase, stream);
    est.g_hat.resize(static_cast<std::size_t>(cfg.K));
    est.D.resize(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k) {
        auto [gh, dk] =
            lmmse_estimate(obs[static_cast<std::size_t>(k)], corr.R[static_cast<std::size_t>(k)],
                           cfg.sigma_b2, est.p_p);
        est.g_hat[static_cast<std::size_t>(k)] = std::move(gh);
        est.D[static_cast<std::size_t>(k)] = std::move(dk);
    }
    return est;
}

/// Deterministic estimation covariances D_k for all users, no sampling.
inline std::vector<EstCovariance> est_covariances(const SystemConfig& cfg,
                                                  const CorrelationSet& corr) {
    std::vector<EstCovariance> out;
    out.reserve(corr.R.size());
    for (const auto& rk : corr.R)
        out.push_back(lmmse_filter(rk, cfg.sigma_b2, cfg.pilot_power()).D);
    return out;
}

/// tr E_{k,n} = tr[ R + A R A^H - 2 rho_n e^{-sigma_varphi^2 n/2} A R DeltaPhi_n ]
/// for a candidate real diagonal A; the objective whose minimizer is the
/// aging operator. Separable in the diagonal entries, which is what makes
/// the optimality property easy to probe.
inline double mse_of_operator(const std::vector<double>& candidate, const SystemConfig& cfg,
                              const CorrMatrix& rk, int k, int n) {
    if (candidate.size() != static_cast<std::size_t>(cfg.M))
        throw std::invalid_argument("mse_of_operator: candidate size mismatch");
    const double rho = jakes_rho(cfg, n);
    const double user_decay = std::exp(-0.5 * cfg.sigma_varphi2(k) * static_cast<double>(n));
    double mse = 0.0;
    for (int m = 0; m < cfg.M; ++m) {
        const double rmm = rk.diag_entry(m);
        const double a = candidate[static_cast<std::size_t>(m)];
        const double dphi = std::exp(-0.5 * cfg.sigma_phi2(m) * static_cast<double>(n));
        mse += rmm * (1.0 + a * a - 2.0 * rho * user_decay * dphi * a);
    }
    return mse;
}

} // namespace agingsim

#endif
