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

#ifndef AGINGSIM_BESSEL_HPP
#define AGINGSIM_BESSEL_HPP

#include <cmath>
#include <stdexcept>

namespace agingsim {

namespace detail {

// Ascending series sum_m (-1)^m (x/2)^(2m) / (m!)^2, Kahan-compensated.
// The largest term is I0(x)-sized, so compensation keeps the absolute
// rounding error near eps * I0(x); usable to ~1e-11 for |x| <= 13.
inline double j0_power_series(double x) {
    const double q = 0.25 * x * x;
    double sum = 1.0, comp = 0.0, term = 1.0;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (static_cast<double>(m) * static_cast<double>(m));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)))
            break;
    }
    return sum;
}

// Hankel asymptotic expansion
//   J0(x) = sqrt(2/(pi x)) * (P(x) cos(x - pi/4) - Q(x) sin(x - pi/4)),
// summed to its smallest term. The smallest term is ~6e-12 at x = 12 and
// falls rapidly with x, so the series meets a 1e-10 absolute target for
// x >= 12.
inline double j0_hankel(double x) {
    const double z2 = x * x;
    double p = 1.0, q = -0.125 / x;
    double pterm = 1.0, qterm = q;
    double last_p = std::abs(pterm), last_q = std::abs(qterm);
    for (int k = 1; k < 24; ++k) {
        const double fk = static_cast<double>(k);
        const double pr = (4.0 * fk - 3.0) * (4.0 * fk - 1.0);
        pterm *= -pr * pr / ((2.0 * fk) * (2.0 * fk - 1.0) * 64.0 * z2);
        const double qr = (4.0 * fk - 1.0) * (4.0 * fk + 1.0);
        qterm *= -qr * qr / ((2.0 * fk + 1.0) * (2.0 * fk) * 64.0 * z2);
        if (std::abs(pterm) >= last_p || std::abs(qterm) >= last_q)
            break; // asymptotic series started diverging
        p += pterm;
        q += qterm;
        last_p = std::abs(pterm);
        last_q = std::abs(qterm);
        if (last_p < 1e-17 && last_q < 1e-17)
            break;
    }
    const double chi = x - 0.78539816339744830962;
    const double amp = std::sqrt(0.63661977236758134308 / x); // 2/pi
    return amp * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace detail

/// Bessel function of the first kind, order zero. Absolute error below
/// 1e-10 on |x| <= 50 (power series for |x| < 12, Hankel expansion beyond).
inline double bessel_j0(double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("bessel_j0: argument must be finite");
    const double ax = std::abs(x);
    if (ax == 0.0)
        return 1.0;
    if (ax < 12.0)
        return detail::j0_power_series(ax);
    return detail::j0_hankel(ax);
}

} // namespace agingsim

#endif
