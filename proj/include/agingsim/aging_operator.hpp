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

#ifndef AGINGSIM_AGING_OPERATOR_HPP
#define AGINGSIM_AGING_OPERATOR_HPP

#include <cmath>
#include <vector>

#include "agingsim/bessel.hpp"
#include "agingsim/config.hpp"
#include "agingsim/la.hpp"

namespace agingsim {

/// MSE-optimal linear aging operator for user k at lag n,
///
///   A_n = J0(2 pi f_D T_s n) * e^{-sigma_varphi_k^2 n / 2} * DeltaPhi_n,
///   DeltaPhi_n = diag{ e^{-sigma_phi_m^2 n / 2} },
///
/// a real diagonal matrix that shrinks the channel estimate by the combined
/// Doppler decorrelation and the accumulated BS/user phase drift. Under
/// CLO/ILO it degenerates to alpha_n * I.
struct AgingOperator {
    int lag = 0;
    double scalar_part = 1.0;       // rho_n * exp(-sigma_varphi_k^2 n/2)
    std::vector<double> delta_phi;  // exp(-sigma_phi_m^2 n/2), size M
    std::vector<double> diag;       // scalar_part * delta_phi

    bool is_uniform() const {
        for (double v : diag)
            if (v != diag[0])
                return false;
        return true;
    }

    /// alpha_n for the CLO/ILO (uniform) case.
    double alpha() const { return diag.empty() ? scalar_part : diag[0]; }

    CMat as_matrix() const { return CMat::diag(diag); }
};

inline AgingOperator aging_operator(const SystemConfig& cfg, int k, int n) {
    if (n < 0)
        throw std::invalid_argument("aging_operator: lag must be >= 0");
    AgingOperator a;
    a.lag = n;
    const double rho = bessel_j0(2.0 * kPi * cfg.f_D * cfg.T_s * static_cast<double>(n));
    a.scalar_part = rho * std::exp(-0.5 * cfg.sigma_varphi2(k) * static_cast<double>(n));
    a.delta_phi.resize(static_cast<std::size_t>(cfg.M));
    a.diag.resize(static_cast<std::size_t>(cfg.M));
    for (int m = 0; m < cfg.M; ++m) {
        const double dp = std::exp(-0.5 * cfg.sigma_phi2(m) * static_cast<double>(n));
        a.delta_phi[static_cast<std::size_t>(m)] = dp;
        a.diag[static_cast<std::size_t>(m)] = a.scalar_part * dp;
    }
    return a;
}

} // namespace agingsim

#endif
