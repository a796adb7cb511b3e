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

#ifndef AGINGSIM_UNITS_HPP
#define AGINGSIM_UNITS_HPP

#include <cmath>
#include <stdexcept>

namespace agingsim {

inline constexpr double kPi = 3.14159265358979323846;

/// Per-symbol phase increment std in degrees -> variance in radians^2.
/// All decay exponentials e^{-sigma^2 n / 2} take radian variance.
inline double deg_to_rad_variance(double sigma_deg) {
    if (!(sigma_deg >= 0.0))
        throw std::invalid_argument("deg_to_rad_variance: sigma_deg must be >= 0");
    const double rad = sigma_deg * kPi / 180.0;
    return rad * rad;
}

/// Wiener phase increment variance 4 pi^2 f_c c T_s (radians^2) from the
/// carrier frequency, oscillator constant and symbol time.
inline double phase_increment_variance(double f_c_hz, double c_osc, double t_s_sec) {
    if (!(f_c_hz >= 0.0) || !(c_osc >= 0.0) || !(t_s_sec >= 0.0))
        throw std::invalid_argument("phase_increment_variance: inputs must be >= 0");
    return 4.0 * kPi * kPi * f_c_hz * c_osc * t_s_sec;
}

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

} // namespace agingsim

#endif
