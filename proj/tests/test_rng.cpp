// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include <doctest.h>

#include "irshare/rng.hpp"

using namespace irshare;

TEST_CASE("derived streams are deterministic and tag-sensitive") {
    const rng::Key root{42};
    rng::Stream a(rng::derive(root, "users"));
    rng::Stream b(rng::derive(root, "users"));
    rng::Stream c(rng::derive(root, "rician"));
    bool any_difference = false;
    for (int i = 0; i < 64; ++i) {
        const uint64_t va = a.bits();
        CHECK(va == b.bits());
        any_difference |= (va != c.bits());
    }
    CHECK(any_difference);
}

TEST_CASE("integer and string derivations compose without collisions on a sample") {
    const rng::Key root{7};
    std::vector<uint64_t> seen;
    for (uint64_t i = 0; i < 128; ++i) seen.push_back(rng::derive(root, i).v);
    seen.push_back(rng::derive(root, "drop").v);
    seen.push_back(rng::derive(rng::derive(root, "drop"), uint64_t{3}).v);
    for (size_t i = 0; i < seen.size(); ++i)
        for (size_t j = i + 1; j < seen.size(); ++j) CHECK(seen[i] != seen[j]);
}

TEST_CASE("uniform stays in [0,1) and honors bounds") {
    rng::Stream s(rng::Key{1});
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = s.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        const double v = s.uniform(-2.0, 5.0);
        CHECK(v >= -2.0);
        CHECK(v < 5.0);
    }
    CHECK(lo < 0.05);  // the sample actually spreads over the interval
    CHECK(hi > 0.95);
}

TEST_CASE("unit gaussian has zero mean and unit power within Monte Carlo error") {
    rng::Stream s(rng::Key{99});
    const int n = 100000;
    double re = 0.0, im = 0.0, p = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx z = s.unit_gaussian();
        re += z.real();
        im += z.imag();
        p += std::norm(z);
    }
    re /= n;
    im /= n;
    p /= n;
    // 3 standard errors: mean components sqrt(0.5/n), power sqrt(1/n)
    CHECK(std::abs(re) < 0.0068);
    CHECK(std::abs(im) < 0.0068);
    CHECK(std::abs(p - 1.0) < 0.0095);
}
