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

#include <doctest.h>

#include <cmath>

#include "agingsim/scenario.hpp"
#include "oracles.hpp"

using namespace agingsim;

namespace {
SystemConfig base_cfg() {
    SystemConfig cfg;
    cfg.M = 4;
    cfg.K = 8;
    cfg.tau = 8;
    cfg.T_c = 20;
    return cfg;
}
} // namespace

TEST_SUITE("scenario") {

TEST_CASE("large-scale gain formula") {
    SystemConfig cfg = base_cfg();
    cfg.shadow_std_db = 0.0;
    CHECK(large_scale_gain(cfg, cfg.guard_radius, 1.0) == 1.0);
    CHECK(large_scale_gain(cfg, 2.0 * cfg.guard_radius, 1.0) ==
          doctest::Approx(std::pow(2.0, -3.8)).epsilon(1e-12));
    // monotone decreasing in r at fixed shadowing
    double prev = 1.0;
    for (double r = 110.0; r <= 1000.0; r += 90.0) {
        const double b = large_scale_gain(cfg, r, 1.0);
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("drop_users: radii uniform in area, gains match the formula") {
    SystemConfig cfg = base_cfg();
    RngStream stream(31, {0});
    const double r0sq = cfg.guard_radius * cfg.guard_radius;
    const double span = cfg.cell_radius * cfg.cell_radius - r0sq;
    std::vector<double> u;
    u.reserve(100000);
    while (u.size() < 100000) {
        const UserDrop drop = drop_users(cfg, stream);
        for (std::size_t k = 0; k < drop.radius_m.size(); ++k) {
            const double r = drop.radius_m[k];
            CHECK(r >= cfg.guard_radius);
            CHECK(r <= cfg.cell_radius);
            CHECK(drop.beta[k] ==
                  doctest::Approx(large_scale_gain(cfg, r, drop.shadow[k])).epsilon(1e-12));
            u.push_back((r * r - r0sq) / span);
        }
    }
    // KS critical value at p = 0.001 for n = 1e5: 1.9494 / sqrt(n)
    CHECK(oracles::ks_statistic_uniform01(u) < 1.9494 / std::sqrt(100000.0));
}

TEST_CASE("drop_users with zero shadowing at the guard ring") {
    SystemConfig cfg = base_cfg();
    cfg.shadow_std_db = 0.0;
    cfg.cell_radius = cfg.guard_radius + 1e-6; // pin r_k ~ r_0
    RngStream stream(31, {1});
    const UserDrop drop = drop_users(cfg, stream);
    for (double b : drop.beta)
        CHECK(b == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("build_correlation: scalar model") {
    SystemConfig cfg = base_cfg();
    UserDrop drop;
    drop.beta = {1.0, 2.0};
    drop.radius_m = drop.angle_rad = drop.shadow = {0, 0};
    cfg.K = 2;
    cfg.tau = 2;
    const CorrelationSet set = build_correlation(cfg, drop);
    CHECK(set.all_scalar());
    const CMat r0 = set.R[0].dense();
    CHECK((r0 - CMat::identity(4)).frobenius() == 0.0);
    CHECK(set.R[1].trace() == doctest::Approx(2.0 * cfg.M));
}

TEST_CASE("build_correlation: exponential model") {
    SystemConfig cfg = base_cfg();
    cfg.M = 2;
    cfg.K = 1;
    cfg.tau = 1;
    cfg.antenna_correlation = 0.5;
    UserDrop drop;
    drop.beta = {2.0};
    drop.radius_m = drop.angle_rad = drop.shadow = {0};
    const CorrelationSet set = build_correlation(cfg, drop);
    const CMat r = set.R[0].dense();
    CHECK(r(0, 0).real() == doctest::Approx(2.0));
    CHECK(r(0, 1).real() == doctest::Approx(1.0));
    CHECK(r(1, 0).real() == doctest::Approx(1.0));
    CHECK(r(1, 1).real() == doctest::Approx(2.0));
    // sqrt consistency
    const CMat s = set.R[0].dense_sqrt();
    CHECK((s * s - r).frobenius() / r.frobenius() < 1e-10);
    // unit-diagonal exponential model keeps trace = beta * M
    CHECK(set.R[0].trace() == doctest::Approx(2.0 * cfg.M));
}

TEST_CASE("build_correlation: positive definite for corr < 1, error at 1") {
    SystemConfig cfg = base_cfg();
    cfg.M = 8;
    cfg.K = 1;
    cfg.tau = 1;
    cfg.antenna_correlation = 0.9;
    UserDrop drop;
    drop.beta = {1.0};
    drop.radius_m = drop.angle_rad = drop.shadow = {0};
    const CorrelationSet set = build_correlation(cfg, drop);
    const HermitianEig e = eig_hermitian(set.R[0].dense());
    CHECK(e.values.front() > 0.0);

    cfg.antenna_correlation = 1.0;
    CHECK_THROWS_WITH_AS(static_cast<void>(build_correlation(cfg, drop)), "singular correlation",
                         std::invalid_argument);
}

TEST_CASE("config validation names the offending key") {
    SystemConfig cfg = base_cfg();
    cfg.tau = 2; // < K
    CHECK_THROWS_WITH_AS(cfg.validate(), "config key 'tau': must be >= k (orthogonal pilots)",
                         std::invalid_argument);
    cfg = base_cfg();
    cfg.guard_radius = 1200.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = base_cfg();
    cfg.lo_topology = LoTopology::SLO;
    cfg.sigma_phi_deg = {1.0, 1.0}; // needs M entries
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

} // TEST_SUITE
