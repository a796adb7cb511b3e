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

#ifndef AGINGSIM_RNG_HPP
#define AGINGSIM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace agingsim {

namespace detail {

// SplitMix64 finalizer. Used both to derive stream seeds and to expand
// the xoshiro state.
inline std::uint64_t splitmix64_next(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace detail

/// Counter-derived random stream: the generator state is a pure function of
/// (root_seed, stream_path), so any worker can recreate any stream without
/// coordination and results do not depend on scheduling order.
///
/// Core generator is xoshiro256++; normal variates come from a hand-rolled
/// Box-Muller so that the draw sequence is identical on every platform
/// (std::normal_distribution is implementation-defined and would break
/// bit-reproducibility).
class RngStream {
  public:
    RngStream() : RngStream(0) {}

    explicit RngStream(std::uint64_t root_seed) : root_(root_seed) { reseed(root_seed); }

    RngStream(std::uint64_t root_seed, const std::vector<std::uint64_t>& path) : root_(root_seed) {
        std::uint64_t s = root_seed;
        for (std::uint64_t p : path)
            s = derive(s, p);
        reseed(s);
        path_ = path;
    }

    /// Child stream addressed by one more path element. The parent is not
    /// consumed; children of distinct indices are independent streams.
    RngStream child(std::uint64_t index) const {
        RngStream c;
        c.root_ = root_;
        c.path_ = path_;
        c.path_.push_back(index);
        std::uint64_t s = root_;
        for (std::uint64_t p : c.path_)
            s = derive(s, p);
        c.reseed(s);
        return c;
    }

    std::uint64_t root_seed() const { return root_; }
    const std::vector<std::uint64_t>& path() const { return path_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl64(s_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1]; never returns 0 so log() is safe.
    double next_double() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal, Box-Muller. Draws two uniforms per pair; the spare
    /// is cached so consumption stays deterministic per stream.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Circularly symmetric complex normal with E|z|^2 = 1
    /// (real and imaginary parts each N(0, 1/2)).
    std::complex<double> next_cnormal() {
        const double inv_sqrt2 = 0.70710678118654752440;
        const double re = next_normal() * inv_sqrt2;
        const double im = next_normal() * inv_sqrt2;
        return {re, im};
    }

  private:
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t a = seed;
        std::uint64_t h = detail::splitmix64_next(a);
        std::uint64_t b = index ^ 0xd1b54a32d192ed03ULL;
        h ^= detail::splitmix64_next(b);
        std::uint64_t c = h;
        return detail::splitmix64_next(c);
    }

    void reseed(std::uint64_t s) {
        for (auto& w : s_)
            w = detail::splitmix64_next(s);
        have_spare_ = false;
        spare_ = 0.0;
    }

    std::uint64_t root_ = 0;
    std::vector<std::uint64_t> path_;
    std::uint64_t s_[4] = {1, 2, 3, 4};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace agingsim

#endif
