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

#ifndef AGINGSIM_SINR_REPORT_HPP
#define AGINGSIM_SINR_REPORT_HPP

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace agingsim {

enum class SinrSource { MonteCarlo, DeterministicEquivalent };

inline std::string to_string(SinrSource s) {
    return s == SinrSource::MonteCarlo ? "MC" : "DE";
}

/// Additive SINR decomposition at one (user, symbol) point. gamma is the
/// exact ratio signal / (bf_variance + cross_user + noise); the common scale
/// of the four terms is a reporting convention and cancels in the ratio.
struct SinrComponents {
    double signal = 0.0;
    double bf_variance = 0.0; // own-beam fluctuation
    double cross_user = 0.0;
    double noise = 0.0;

    double interference() const { return bf_variance + cross_user + noise; }
    double gamma() const { return signal / interference(); }
};

/// Per-user, per-symbol SINR breakdown plus the block rates
/// R_k = (1/T_c) sum_n log2(1 + gamma_{k,n}) over the evaluated symbols.
struct SinrReport {
    SinrSource source = SinrSource::MonteCarlo;
    int M = 0, K = 0, tau = 0, T_c = 0;
    long trials = 0;                 // MC only
    std::vector<int> lags;           // absolute symbol times, aging measured from 0
    std::vector<SinrComponents> comp; // [k * lags.size() + j]
    std::vector<double> lambda_bar;  // per lag, normalization in the per-antenna convention
    std::vector<double> rate;        // per user
    std::vector<double> rate_ci;     // per user, 95% half-width (MC), zeros for DE
    double sum_se = 0.0;

    const SinrComponents& at(int k, std::size_t lag_index) const {
        return comp[static_cast<std::size_t>(k) * lags.size() + lag_index];
    }
    double gamma(int k, std::size_t lag_index) const { return at(k, lag_index).gamma(); }
};

inline double sum_spectral_efficiency(const SinrReport& report) {
    return std::accumulate(report.rate.begin(), report.rate.end(), 0.0);
}

} // namespace agingsim

#endif
