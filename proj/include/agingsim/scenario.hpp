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

#ifndef AGINGSIM_SCENARIO_HPP
#define AGINGSIM_SCENARIO_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "agingsim/config.hpp"
#include "agingsim/la.hpp"
#include "agingsim/rng.hpp"

namespace agingsim {

/// One random placement of the K users in the annulus [guard, cell] radius,
/// with lognormal shadowing and the resulting large-scale gains
/// beta_k = z_k / (r_k / r_0)^upsilon.
struct UserDrop {
    std::vector<double> radius_m;
    std::vector<double> angle_rad;
    std::vector<double> shadow; // z_k, linear
    std::vector<double> beta;   // large-scale gain
};

/// Per-user spatial covariance R_k and its Hermitian square root. When the
/// antenna correlation coefficient is zero the matrices are beta_k * I and
/// only the scalar is stored; the dense representation exists for the
/// exponential-correlation model.
struct CorrMatrix {
    bool scalar = true;
    double beta = 1.0;
    int M = 0;
    CMat R;      // dense only
    CMat sqrt_R; // dense only

    static CorrMatrix make_scalar(int M, double beta) {
        CorrMatrix c;
        c.scalar = true;
        c.beta = beta;
        c.M = M;
        return c;
    }

    static CorrMatrix make_dense(CMat R_in, CMat sqrt_in, double beta_in) {
        CorrMatrix c;
        c.scalar = false;
        c.M = static_cast<int>(R_in.rows());
        c.R = std::move(R_in);
        c.sqrt_R = std::move(sqrt_in);
        c.beta = beta_in;
        return c;
    }

    CMat dense() const {
        if (!scalar)
            return R;
        return CMat::scaled_identity(static_cast<std::size_t>(M), beta);
    }

    CMat dense_sqrt() const {
        if (!scalar)
            return sqrt_R;
        return CMat::scaled_identity(static_cast<std::size_t>(M), std::sqrt(beta));
    }

    double diag_entry(int m) const { return scalar ? beta : R(static_cast<std::size_t>(m), static_cast<std::size_t>(m)).real(); }

    double trace() const {
        return scalar ? beta * M : R.trace().real();
    }

    /// h = R^{1/2} w with w ~ CN(0, I).
    CVec sample(RngStream& stream) const {
        CVec w(static_cast<std::size_t>(M));
        for (auto& v : w)
            v = stream.next_cnormal();
        if (scalar) {
            const double s = std::sqrt(beta);
            for (auto& v : w)
                v *= s;
            return w;
        }
        return sqrt_R * w;
    }
};

struct CorrelationSet {
    std::vector<CorrMatrix> R; // size K

    int users() const { return static_cast<int>(R.size()); }

    bool all_scalar() const {
        for (const auto& c : R)
            if (!c.scalar)
                return false;
        return true;
    }

    /// Convenience constructor for the R_k = beta_k I case.
    static CorrelationSet scalar(int M, const std::vector<double>& betas) {
        CorrelationSet set;
        set.R.reserve(betas.size());
        for (double b : betas)
            set.R.push_back(CorrMatrix::make_scalar(M, b));
        return set;
    }
};

/// beta = z / (r / r_0)^upsilon
inline double large_scale_gain(const SystemConfig& cfg, double r, double z) {
    return z / std::pow(r / cfg.guard_radius, cfg.path_loss_exp);
}

/// Users uniform in area over the annulus [r_0, R]; shadowing lognormal with
/// 10 log10(z) ~ N(0, shadow_std_db^2).
inline UserDrop drop_users(const SystemConfig& cfg, RngStream& stream) {
    cfg.validate();
    UserDrop drop;
    const std::size_t K = static_cast<std::size_t>(cfg.K);
    drop.radius_m.resize(K);
    drop.angle_rad.resize(K);
    drop.shadow.resize(K);
    drop.beta.resize(K);
    const double r0sq = cfg.guard_radius * cfg.guard_radius;
    const double rsq_span = cfg.cell_radius * cfg.cell_radius - r0sq;
    for (std::size_t k = 0; k < K; ++k) {
        const double u = stream.next_double();
        const double r = std::sqrt(r0sq + u * rsq_span);
        drop.radius_m[k] = r;
        drop.angle_rad[k] = 2.0 * kPi * stream.next_double();
        const double z = std::pow(10.0, cfg.shadow_std_db * stream.next_normal() / 10.0);
        drop.shadow[k] = z;
        drop.beta[k] = large_scale_gain(cfg, r, z);
    }
    return drop;
}

/// R_k = beta_k * C with C the exponential correlation model
/// C[i][j] = rho^|i-j| (identity when rho = 0).
inline CorrelationSet build_correlation(const SystemConfig& cfg, const UserDrop& drop) {
    if (drop.beta.size() != static_cast<std::size_t>(cfg.K))
        throw std::invalid_argument("build_correlation: drop size mismatch");
    if (cfg.antenna_correlation >= 1.0)
        throw std::invalid_argument("singular correlation");

    CorrelationSet set;
    set.R.reserve(drop.beta.size());
    if (cfg.antenna_correlation == 0.0) {
        for (double b : drop.beta)
            set.R.push_back(CorrMatrix::make_scalar(cfg.M, b));
        return set;
    }

    const std::size_t m = static_cast<std::size_t>(cfg.M);
    CMat c(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            c(i, j) = std::pow(cfg.antenna_correlation,
                               std::abs(static_cast<double>(i) - static_cast<double>(j)));
    const CMat sqrt_c = hermitian_sqrt(c);
    for (double b : drop.beta) {
        const double sb = std::sqrt(b);
        set.R.push_back(CorrMatrix::make_dense(c.scaled(b), sqrt_c.scaled(sb), b));
    }
    return set;
}

} // namespace agingsim

#endif
