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

#ifndef AGINGSIM_PHASE_NOISE_HPP
#define AGINGSIM_PHASE_NOISE_HPP

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "agingsim/config.hpp"
#include "agingsim/la.hpp"
#include "agingsim/rng.hpp"

namespace agingsim {

/// Wiener phase trajectories over one coherence block: BS antenna phases
/// phi[m][n] and user phases varphi[k][n] for n = 0..T_c. Phases are stored
/// unwrapped so increment statistics stay exact.
struct PhaseState {
    int M = 0, K = 0, T_c = 0;
    LoTopology topology = LoTopology::CLO;
    std::vector<double> phi;    // M x (T_c+1), row-major
    std::vector<double> varphi; // K x (T_c+1), row-major

    double bs_phase(int m, int n) const {
        return phi[static_cast<std::size_t>(m) * (T_c + 1) + static_cast<std::size_t>(n)];
    }
    double user_phase(int k, int n) const {
        return varphi[static_cast<std::size_t>(k) * (T_c + 1) + static_cast<std::size_t>(n)];
    }
    /// theta^{(m)}_{k,n} = phi_{m,n} + varphi_{k,n}
    double theta(int k, int m, int n) const { return bs_phase(m, n) + user_phase(k, n); }
};

/// Diagonal of Theta_{k,n} = diag{ e^{j theta^(m)_{k,n}} }.
struct PhaseMatrix {
    CVec diagonal;
};

struct PhaseInit {
    std::vector<double> phi0;    // size M
    std::vector<double> varphi0; // size K
};

/// Simulate the discrete Wiener phase processes over one block.
/// CLO draws one shared BS increment per symbol, ILO draws M independent
/// increments with the common variance, SLO draws M independent increments
/// with per-antenna variances. Users are always independent. Phases start
/// at zero unless an initial column is supplied.
inline PhaseState evolve_phase(const SystemConfig& cfg, RngStream& stream,
                               const std::optional<PhaseInit>& initial = std::nullopt) {
    cfg.validate();
    PhaseState st;
    st.M = cfg.M;
    st.K = cfg.K;
    st.T_c = cfg.T_c;
    st.topology = cfg.lo_topology;
    const std::size_t cols = static_cast<std::size_t>(cfg.T_c) + 1;
    st.phi.assign(static_cast<std::size_t>(cfg.M) * cols, 0.0);
    st.varphi.assign(static_cast<std::size_t>(cfg.K) * cols, 0.0);

    if (initial) {
        if (initial->phi0.size() != static_cast<std::size_t>(cfg.M) ||
            initial->varphi0.size() != static_cast<std::size_t>(cfg.K))
            throw std::invalid_argument("evolve_phase: initial column size mismatch");
        for (int m = 0; m < cfg.M; ++m)
            st.phi[static_cast<std::size_t>(m) * cols] = initial->phi0[static_cast<std::size_t>(m)];
        for (int k = 0; k < cfg.K; ++k)
            st.varphi[static_cast<std::size_t>(k) * cols] = initial->varphi0[static_cast<std::size_t>(k)];
    }

    for (int n = 1; n <= cfg.T_c; ++n) {
        if (cfg.lo_topology == LoTopology::CLO) {
            const double delta = std::sqrt(cfg.sigma_phi2(0)) * stream.next_normal();
            for (int m = 0; m < cfg.M; ++m) {
                const std::size_t row = static_cast<std::size_t>(m) * cols;
                st.phi[row + static_cast<std::size_t>(n)] =
                    st.phi[row + static_cast<std::size_t>(n - 1)] + delta;
            }
        } else {
            for (int m = 0; m < cfg.M; ++m) {
                const std::size_t row = static_cast<std::size_t>(m) * cols;
                const double delta = std::sqrt(cfg.sigma_phi2(m)) * stream.next_normal();
                st.phi[row + static_cast<std::size_t>(n)] =
                    st.phi[row + static_cast<std::size_t>(n - 1)] + delta;
            }
        }
        for (int k = 0; k < cfg.K; ++k) {
            const std::size_t row = static_cast<std::size_t>(k) * cols;
            const double delta = std::sqrt(cfg.sigma_varphi2(k)) * stream.next_normal();
            st.varphi[row + static_cast<std::size_t>(n)] =
                st.varphi[row + static_cast<std::size_t>(n - 1)] + delta;
        }
    }
    return st;
}

inline PhaseMatrix theta_matrix(const PhaseState& state, int k, int n) {
    if (k < 0 || k >= state.K)
        throw std::out_of_range("theta_matrix: user index out of range");
    if (n < 0 || n > state.T_c)
        throw std::out_of_range("theta_matrix: symbol index out of range");
    PhaseMatrix pm;
    pm.diagonal.resize(static_cast<std::size_t>(state.M));
    for (int m = 0; m < state.M; ++m) {
        const double th = state.theta(k, m, n);
        pm.diagonal[static_cast<std::size_t>(m)] = std::polar(1.0, th);
    }
    return pm;
}

} // namespace agingsim

#endif
