// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

#include "irshare/types.hpp"

namespace irshare::rng {

// Named counter-based stream keys. Every random draw in the simulator
// comes from a stream whose key is derived as
//   key = mix(seed, drop_index, purpose_tag, ...)
// so parallel execution order cannot change any result.
struct Key {
    uint64_t v = 0;
};

inline uint64_t mix64(uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline Key derive(Key k, uint64_t x) { return Key{mix64(k.v ^ mix64(x))}; }
inline Key derive(Key k, std::string_view tag) { return derive(k, fnv1a64(tag)); }

// Deterministic stream of doubles over a derived key. The generator is
// std::mt19937_64 (seeding from a single word is specified by the
// standard); the value mappings are written out here so that every
// platform draws identical sequences.
class Stream {
  public:
    explicit Stream(Key k) : gen_(k.v) {}

    uint64_t bits() { return gen_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform angle in [0, 2*pi)
    double angle() { return 2.0 * M_PI * uniform(); }

    // circularly-symmetric complex Gaussian, unit variance: E|z|^2 = 1
    cplx unit_gaussian() {
        double u = uniform();
        double r = std::sqrt(-std::log1p(-u));  // |z|^2 ~ Exp(1)
        double th = angle();
        return {r * std::cos(th), r * std::sin(th)};
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace irshare::rng
