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
// Monte-Carlo evaluation of the hardening-bound SINR with MRT. Everything
// is computed from the physical received-signal model
//
//   y_{k,n} = sqrt(p_d) h_{k,n}^H Theta_{k,n} s_n + z_{k,n},
//   s_n = sqrt(lambda) F_n x_n,  F_n = [A_n(1) g_hat_1, ..., A_n(K) g_hat_K],
//
// through the effective gains u_{k,i} = h_{k,n}^H Theta_{k,n} f_{i,n}:
// desired power |E u_{k,k}|^2, own-beam fluctuation Var u_{k,k}, cross-user
// power sum_{i != k} E|u_{k,i}|^2, and the noise term via the across-trial
// mean of (1/K) tr F F^H (the outer expectation in the power constraint).
//
// Reproducibility: trial t draws from the child stream base.child(t) in a
// fixed order, trials are grouped into a chunk count that depends only on
// the trial count, chunk partial sums are accumulated in trial order and
// reduced in chunk order. The result is bit-identical for any thread count.

#ifndef AGINGSIM_DOWNLINK_HPP
#define AGINGSIM_DOWNLINK_HPP

#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "agingsim/aging_operator.hpp"
#include "agingsim/channel.hpp"
#include "agingsim/config.hpp"
#include "agingsim/estimation.hpp"
#include "agingsim/scenario.hpp"
#include "agingsim/sinr_report.hpp"

namespace agingsim {

/// MRT precoder F = [A_1 g_hat_1, ..., A_K g_hat_K] with the single-sample
/// power normalization lambda = 1 / ((1/K) tr F F^H); the Monte-Carlo
/// pipeline replaces the trace by its across-trial mean.
struct Precoder {
    CMat F;
    double lambda = 0.0;
};

inline Precoder mrt_precoder(const ChannelEstimate& estimate,
                             const std::vector<AgingOperator>& aging) {
    const std::size_t K = estimate.g_hat.size();
    if (aging.size() != K)
        throw std::invalid_argument("mrt_precoder: aging operator count mismatch");
    const std::size_t M = estimate.g_hat.front().size();
    Precoder p;
    p.F = CMat(M, K);
    double trff = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        if (aging[k].diag.size() != M)
            throw std::invalid_argument("mrt_precoder: operator dimension mismatch");
        for (std::size_t m = 0; m < M; ++m) {
            const cplx v = aging[k].diag[m] * estimate.g_hat[k][m];
            p.F(m, k) = v;
            trff += std::norm(v);
        }
    }
    p.lambda = static_cast<double>(K) / trff;
    return p;
}

struct McOptions {
    long trials = 1000;
    RngStream stream_base; // per-trial streams are stream_base.child(t)
    int threads = 1;
    std::vector<int> lags; // absolute symbol times >= 1, ascending
};

namespace detail {

struct McAccum {
    std::vector<cplx> sum_u;       // lags * K, own-beam gain
    std::vector<double> sum_u2;    // lags * K, |own-beam gain|^2
    std::vector<double> sum_cross; // lags * K, sum_{i != k} |u_{k,i}|^2
    std::vector<double> sum_trff;  // per lag
    long count = 0;

    void init(std::size_t lags, std::size_t users) {
        sum_u.assign(lags * users, cplx{});
        sum_u2.assign(lags * users, 0.0);
        sum_cross.assign(lags * users, 0.0);
        sum_trff.assign(lags, 0.0);
        count = 0;
    }

    void add(const McAccum& o) {
        for (std::size_t i = 0; i < sum_u.size(); ++i) {
            sum_u[i] += o.sum_u[i];
            sum_u2[i] += o.sum_u2[i];
            sum_cross[i] += o.sum_cross[i];
        }
        for (std::size_t i = 0; i < sum_trff.size(); ++i)
            sum_trff[i] += o.sum_trff[i];
        count += o.count;
    }
};

struct McPlan {
    const SystemConfig* cfg = nullptr;
    const CorrelationSet* corr = nullptr;
    std::vector<LmmseFilter> filters;              // per user
    std::vector<int> lags;                         // ascending
    std::vector<double> rho;                       // per lag
    std::vector<std::vector<double>> a_scalar;     // [lag][user]
    std::vector<std::vector<double>> delta_phi;    // [lag][antenna]
    std::vector<double> sig_phi;                   // per antenna increment std (rad)
    std::vector<double> sig_varphi;                // per user increment std (rad)
    double rho1 = 1.0;                             // AR(1) one-step correlation
};

inline McPlan make_plan(const SystemConfig& cfg, const CorrelationSet& corr,
                        const std::vector<int>& lags) {
    McPlan plan;
    plan.cfg = &cfg;
    plan.corr = &corr;
    plan.lags = lags;
    plan.filters.reserve(corr.R.size());
    for (const auto& rk : corr.R)
        plan.filters.push_back(lmmse_filter(rk, cfg.sigma_b2, cfg.pilot_power()));
    plan.rho.reserve(lags.size());
    plan.a_scalar.resize(lags.size());
    plan.delta_phi.resize(lags.size());
    for (std::size_t j = 0; j < lags.size(); ++j) {
        const int n = lags[j];
        plan.rho.push_back(jakes_rho(cfg, n));
        plan.a_scalar[j].resize(static_cast<std::size_t>(cfg.K));
        for (int k = 0; k < cfg.K; ++k)
            plan.a_scalar[j][static_cast<std::size_t>(k)] =
                plan.rho[j] * std::exp(-0.5 * cfg.sigma_varphi2(k) * static_cast<double>(n));
        plan.delta_phi[j].resize(static_cast<std::size_t>(cfg.M));
        for (int m = 0; m < cfg.M; ++m)
            plan.delta_phi[j][static_cast<std::size_t>(m)] =
                std::exp(-0.5 * cfg.sigma_phi2(m) * static_cast<double>(n));
    }
    plan.sig_phi.resize(static_cast<std::size_t>(cfg.M));
    for (int m = 0; m < cfg.M; ++m)
        plan.sig_phi[static_cast<std::size_t>(m)] = std::sqrt(cfg.sigma_phi2(m));
    plan.sig_varphi.resize(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k)
        plan.sig_varphi[static_cast<std::size_t>(k)] = std::sqrt(cfg.sigma_varphi2(k));
    plan.rho1 = jakes_rho(cfg, 1);
    return plan;
}

struct McWorkspace {
    std::vector<CVec> h0, ghat, hcur, f;
    std::vector<double> phi;    // BS phases (size 1 for CLO, M otherwise)
    std::vector<double> varphi; // user phases
    CVec b;                     // rotated conjugate channel of one user
    CVec noise;
};

// One trial in a frozen draw order: h0 per user, pilot noise per user, then
// per lag (phase increments BS-then-users, channel innovations per user).
inline void run_trial(const McPlan& plan, RngStream stream, McAccum& acc, McWorkspace& ws) {
    const SystemConfig& cfg = *plan.cfg;
    const CorrelationSet& corr = *plan.corr;
    const std::size_t M = static_cast<std::size_t>(cfg.M);
    const std::size_t K = static_cast<std::size_t>(cfg.K);
    const std::size_t L = plan.lags.size();
    const bool clo = cfg.lo_topology == LoTopology::CLO;

    ws.h0.resize(K);
    ws.ghat.resize(K);
    ws.hcur.resize(K);
    ws.f.resize(K);
    ws.b.resize(M);
    ws.phi.assign(clo ? 1 : M, 0.0);
    ws.varphi.assign(K, 0.0);

    for (std::size_t k = 0; k < K; ++k)
        ws.h0[k] = corr.R[k].sample(stream);

    const double noise_scale = std::sqrt(cfg.sigma_b2 / cfg.pilot_power());
    for (std::size_t k = 0; k < K; ++k) {
        CVec y = ws.h0[k]; // Theta at n = 0 is the identity (phase reference)
        for (auto& v : y)
            v += noise_scale * stream.next_cnormal();
        ws.ghat[k] = plan.filters[k].apply(y);
        ws.hcur[k] = ws.h0[k];
    }

    int prev_lag = 0;
    for (std::size_t j = 0; j < L; ++j) {
        const int n = plan.lags[j];
        const int gap = n - prev_lag;
        prev_lag = n;

        const double sgap = std::sqrt(static_cast<double>(gap));
        if (clo) {
            ws.phi[0] += plan.sig_phi[0] * sgap * stream.next_normal();
        } else {
            for (std::size_t m = 0; m < M; ++m)
                ws.phi[m] += plan.sig_phi[m] * sgap * stream.next_normal();
        }
        for (std::size_t k = 0; k < K; ++k)
            ws.varphi[k] += plan.sig_varphi[k] * sgap * stream.next_normal();

        if (cfg.aging_path == AgingPath::DirectJakesLag) {
            const double rho_n = plan.rho[j];
            const double innov = std::sqrt(std::max(0.0, 1.0 - rho_n * rho_n));
            for (std::size_t k = 0; k < K; ++k) {
                if (innov == 0.0) {
                    ws.hcur[k] = ws.h0[k];
                    if (rho_n < 0.0)
                        for (auto& v : ws.hcur[k])
                            v = -v;
                    continue;
                }
                CVec w = corr.R[k].sample(stream);
                for (std::size_t m = 0; m < M; ++m)
                    ws.hcur[k][m] = rho_n * ws.h0[k][m] + innov * w[m];
            }
        } else {
            const double rho1 = plan.rho1;
            const double innov = std::sqrt(std::max(0.0, 1.0 - rho1 * rho1));
            for (int step = 0; step < gap; ++step) {
                for (std::size_t k = 0; k < K; ++k) {
                    if (innov == 0.0)
                        continue;
                    CVec w = corr.R[k].sample(stream);
                    for (std::size_t m = 0; m < M; ++m)
                        ws.hcur[k][m] = rho1 * ws.hcur[k][m] + innov * w[m];
                }
            }
        }

        // precoder columns f_i = A_n(i) g_hat_i and tr F F^H
        double trff = 0.0;
        for (std::size_t i = 0; i < K; ++i) {
            ws.f[i].resize(M);
            const double ai = plan.a_scalar[j][i];
            for (std::size_t m = 0; m < M; ++m) {
                const cplx v = ai * plan.delta_phi[j][m] * ws.ghat[i][m];
                ws.f[i][m] = v;
                trff += std::norm(v);
            }
        }
        acc.sum_trff[j] += trff;

        for (std::size_t k = 0; k < K; ++k) {
            // b[m] = conj(h_{k,n}[m]) e^{j theta^(m)_{k,n}}
            if (clo) {
                const cplx rot = std::polar(1.0, ws.phi[0] + ws.varphi[k]);
                for (std::size_t m = 0; m < M; ++m)
                    ws.b[m] = std::conj(ws.hcur[k][m]) * rot;
            } else {
                for (std::size_t m = 0; m < M; ++m)
                    ws.b[m] = std::conj(ws.hcur[k][m]) * std::polar(1.0, ws.phi[m] + ws.varphi[k]);
            }
            const std::size_t base = j * K + k;
            double cross = 0.0;
            for (std::size_t i = 0; i < K; ++i) {
                cplx u = 0.0;
                const CVec& fi = ws.f[i];
                for (std::size_t m = 0; m < M; ++m)
                    u += ws.b[m] * fi[m];
                if (i == k) {
                    acc.sum_u[base] += u;
                    acc.sum_u2[base] += std::norm(u);
                } else {
                    cross += std::norm(u);
                }
            }
            acc.sum_cross[base] += cross;
        }
    }
    acc.count += 1;
}

} // namespace detail

/// Chunk count depends only on the trial count, never on the thread count.
inline long mc_chunk_count(long trials) {
    return std::max<long>(1, std::min<long>(50, trials / 2));
}

struct McResult {
    SinrReport report;
    std::vector<detail::McAccum> chunks; // kept for diagnostics / batch stats
};

inline McResult mc_evaluate(const SystemConfig& cfg, const CorrelationSet& corr,
                            const McOptions& opts) {
    if (opts.trials < 2)
        throw std::invalid_argument("mc_evaluate: needs at least 2 trials (variance undefined)");
    if (opts.lags.empty())
        throw std::invalid_argument("mc_evaluate: no evaluation symbols");
    for (std::size_t j = 0; j < opts.lags.size(); ++j)
        if (opts.lags[j] < 1 || (j > 0 && opts.lags[j] <= opts.lags[j - 1]))
            throw std::invalid_argument("mc_evaluate: lags must be ascending and >= 1");
    if (corr.users() != cfg.K)
        throw std::invalid_argument("mc_evaluate: correlation set size mismatch");

    const detail::McPlan plan = detail::make_plan(cfg, corr, opts.lags);
    const std::size_t K = static_cast<std::size_t>(cfg.K);
    const std::size_t L = opts.lags.size();

    const long chunks = mc_chunk_count(opts.trials);
    std::vector<detail::McAccum> partials(static_cast<std::size_t>(chunks));
    for (auto& p : partials)
        p.init(L, K);

    std::atomic<long> next{0};
    auto worker = [&]() {
        detail::McWorkspace ws;
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= chunks)
                break;
            const long t0 = c * opts.trials / chunks;
            const long t1 = (c + 1) * opts.trials / chunks;
            for (long t = t0; t < t1; ++t)
                detail::run_trial(plan, opts.stream_base.child(static_cast<std::uint64_t>(t)),
                                  partials[static_cast<std::size_t>(c)], ws);
        }
    };

    const int nthreads = std::max(1, opts.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    detail::McAccum total;
    total.init(L, K);
    for (const auto& p : partials)
        total.add(p);

    auto assemble = [&](const detail::McAccum& acc, SinrReport& rep) {
        rep.source = SinrSource::MonteCarlo;
        rep.M = cfg.M;
        rep.K = cfg.K;
        rep.tau = cfg.tau;
        rep.T_c = cfg.T_c;
        rep.trials = acc.count;
        rep.lags = opts.lags;
        rep.comp.resize(K * L);
        rep.lambda_bar.resize(L);
        rep.rate.assign(K, 0.0);
        rep.rate_ci.assign(K, 0.0);
        const double m2 = static_cast<double>(cfg.M) * static_cast<double>(cfg.M);
        const double cnt = static_cast<double>(acc.count);
        for (std::size_t j = 0; j < L; ++j) {
            const double trff_mean = acc.sum_trff[j] / cnt;
            rep.lambda_bar[j] = static_cast<double>(cfg.M) * static_cast<double>(cfg.K) / trff_mean;
            for (std::size_t k = 0; k < K; ++k) {
                const std::size_t base = j * K + k;
                const cplx mean_u = acc.sum_u[base] / cnt;
                const double var_u =
                    std::max(0.0, (acc.sum_u2[base] - cnt * std::norm(mean_u)) / (cnt - 1.0));
                SinrComponents comp;
                comp.signal = std::norm(mean_u) / m2;
                comp.bf_variance = var_u / m2;
                comp.cross_user = acc.sum_cross[base] / cnt / m2;
                comp.noise = cfg.sigma_k2 * trff_mean / (static_cast<double>(cfg.K) * cfg.p_d * m2);
                rep.comp[k * L + j] = comp;
                rep.rate[k] += std::log2(1.0 + comp.gamma()) / static_cast<double>(cfg.T_c);
            }
        }
        rep.sum_se = sum_spectral_efficiency(rep);
    };

    McResult result;
    assemble(total, result.report);

    // 95% half-widths from chunk (batch) means
    if (chunks >= 2) {
        std::vector<std::vector<double>> chunk_rates(K, std::vector<double>());
        for (const auto& p : partials) {
            if (p.count < 2)
                continue;
            SinrReport r;
            assemble(p, r);
            for (std::size_t k = 0; k < K; ++k)
                chunk_rates[k].push_back(r.rate[k]);
        }
        for (std::size_t k = 0; k < K; ++k) {
            const auto& cr = chunk_rates[k];
            if (cr.size() < 2)
                continue;
            double mean = 0.0;
            for (double v : cr)
                mean += v;
            mean /= static_cast<double>(cr.size());
            double var = 0.0;
            for (double v : cr)
                var += (v - mean) * (v - mean);
            var /= static_cast<double>(cr.size() - 1);
            result.report.rate_ci[k] = 1.96 * std::sqrt(var / static_cast<double>(cr.size()));
        }
    }
    result.chunks = std::move(partials);
    return result;
}

/// Spec-level wrapper: hardening-bound SINR at a single absolute symbol n.
inline SinrReport hardening_sinr_mc(const SystemConfig& cfg, const CorrelationSet& corr,
                                    long trials, int n, std::uint64_t root_seed,
                                    int threads = 1) {
    if (trials < 2)
        throw std::invalid_argument("hardening_sinr_mc: trials must be >= 2 (variance undefined)");
    McOptions opts;
    opts.trials = trials;
    opts.stream_base = RngStream(root_seed);
    opts.threads = threads;
    opts.lags = {n};
    return mc_evaluate(cfg, corr, opts).report;
}

} // namespace agingsim

#endif
