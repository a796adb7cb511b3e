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

#ifndef AGINGSIM_CONFIG_HPP
#define AGINGSIM_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "agingsim/units.hpp"

namespace agingsim {

/// Local-oscillator topology at the base station.
///   CLO: one oscillator shared by all antennas (one phase process)
///   ILO: one oscillator per antenna, identical increment variance
///   SLO: one oscillator per antenna, per-antenna increment variances
enum class LoTopology { CLO, ILO, SLO };

/// How the time-varying channel is advanced between the estimation instant
/// and a data symbol. DirectJakesLag draws (h_0, h_n) jointly with the exact
/// Jakes lag-n correlation J0(2 pi f_D T_s n); RecursiveAr1 runs a
/// first-order recursion whose one-step correlation is J0(2 pi f_D T_s), so
/// its lag-n correlation is J0(...)^n instead.
enum class AgingPath { DirectJakesLag, RecursiveAr1 };

inline std::string to_string(LoTopology t) {
    switch (t) {
    case LoTopology::CLO: return "clo";
    case LoTopology::ILO: return "ilo";
    default: return "slo";
    }
}

inline std::string to_string(AgingPath p) {
    return p == AgingPath::DirectJakesLag ? "direct_jakes_lag" : "recursive_ar1";
}

/// All scalar system parameters. Phase-noise magnitudes are per-symbol
/// increment standard deviations in degrees (user-facing unit); everything
/// downstream converts once to radian variance.
struct SystemConfig {
    int M = 64;    // BS antennas
    int K = 8;     // single-antenna users
    int tau = 8;   // pilot length in symbols, K <= tau <= T_c
    int T_c = 200; // coherence block length in symbols

    double p_u = 1000.0;    // uplink power per user (linear)
    double p_d = 1000.0;    // downlink power per user (linear)
    double sigma_b2 = 1.0;  // BS noise variance (linear)
    double sigma_k2 = 1.0;  // user noise variance (linear)

    double f_D = 0.0;     // Doppler spread, Hz
    double T_s = 2.5e-8;  // symbol time, s
    double f_c = 2e9;     // carrier frequency, Hz

    LoTopology lo_topology = LoTopology::CLO;
    std::vector<double> sigma_phi_deg = {0.0};    // size 1 (CLO/ILO) or M (SLO)
    std::vector<double> sigma_varphi_deg = {0.0}; // size 1 (broadcast) or K

    double cell_radius = 1000.0;  // m
    double guard_radius = 100.0;  // m
    double shadow_std_db = 8.0;   // lognormal shadowing std, dB
    double path_loss_exp = 3.8;
    double antenna_correlation = 0.0; // exponential model coefficient in [0,1)

    AgingPath aging_path = AgingPath::DirectJakesLag;

    double pilot_power() const { return static_cast<double>(tau) * p_u; }

    /// BS phase increment variance at antenna m, radians^2.
    double sigma_phi2(int m) const {
        if (lo_topology == LoTopology::SLO)
            return deg_to_rad_variance(sigma_phi_deg[static_cast<std::size_t>(m)]);
        return deg_to_rad_variance(sigma_phi_deg[0]);
    }

    /// User-k phase increment variance, radians^2.
    double sigma_varphi2(int k) const {
        if (sigma_varphi_deg.size() == 1)
            return deg_to_rad_variance(sigma_varphi_deg[0]);
        return deg_to_rad_variance(sigma_varphi_deg[static_cast<std::size_t>(k)]);
    }

    bool homogeneous_bs_phase() const {
        if (lo_topology != LoTopology::SLO)
            return true;
        for (double v : sigma_phi_deg)
            if (v != sigma_phi_deg[0])
                return false;
        return true;
    }

    int data_symbols() const { return T_c - tau; }

    /// Absolute symbol times of the data phase; aging lags are measured
    /// from the estimation instant n = 0.
    std::vector<int> data_lags() const {
        std::vector<int> lags;
        lags.reserve(static_cast<std::size_t>(data_symbols()));
        for (int n = tau + 1; n <= T_c; ++n)
            lags.push_back(n);
        return lags;
    }

    /// Throws std::invalid_argument naming the offending key.
    void validate() const {
        auto fail = [](const std::string& key, const std::string& why) {
            throw std::invalid_argument("config key '" + key + "': " + why);
        };
        if (M < 1)
            fail("m", "must be >= 1");
        if (K < 1)
            fail("k", "must be >= 1");
        if (tau < K)
            fail("tau", "must be >= k (orthogonal pilots)");
        if (T_c < tau)
            fail("t_c", "must be >= tau");
        if (!(p_u > 0.0))
            fail("p_u", "must be > 0");
        if (!(p_d > 0.0))
            fail("p_d", "must be > 0");
        if (!(sigma_b2 > 0.0))
            fail("sigma_b2", "must be > 0");
        if (!(sigma_k2 > 0.0))
            fail("sigma_k2", "must be > 0");
        if (f_D < 0.0)
            fail("f_d", "must be >= 0");
        if (!(T_s > 0.0))
            fail("t_s", "must be > 0");
        if (!(f_c > 0.0))
            fail("f_c", "must be > 0");
        if (!(cell_radius > 0.0))
            fail("cell_radius", "must be > 0");
        if (!(guard_radius > 0.0))
            fail("guard_radius", "must be > 0");
        if (guard_radius >= cell_radius)
            fail("guard_radius", "must be < cell_radius");
        if (shadow_std_db < 0.0)
            fail("shadow_std_db", "must be >= 0");
        if (!(path_loss_exp > 0.0))
            fail("path_loss_exp", "must be > 0");
        if (antenna_correlation < 0.0 || antenna_correlation >= 1.0)
            fail("antenna_correlation", "must be in [0, 1)");

        if (lo_topology == LoTopology::SLO) {
            if (sigma_phi_deg.size() != static_cast<std::size_t>(M))
                fail("sigma_phi_deg", "needs one entry per antenna (m) under slo");
        } else if (sigma_phi_deg.size() != 1) {
            fail("sigma_phi_deg", "must be a single value under clo/ilo");
        }
        if (sigma_varphi_deg.size() != 1 && sigma_varphi_deg.size() != static_cast<std::size_t>(K))
            fail("sigma_varphi_deg", "needs a single value or one entry per user (k)");
        for (double v : sigma_phi_deg)
            if (v < 0.0)
                fail("sigma_phi_deg", "entries must be >= 0");
        for (double v : sigma_varphi_deg)
            if (v < 0.0)
                fail("sigma_varphi_deg", "entries must be >= 0");
    }
};

} // namespace agingsim

#endif
