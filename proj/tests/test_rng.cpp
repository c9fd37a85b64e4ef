#include "doctest.h"

#include "paretokit/rng.hpp"

#include <algorithm>
#include <set>

using paretokit::Rng;

TEST_CASE("rng streams are reproducible") {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs = differs || x != c.next_u64();
    }
    CHECK(differs);
    Rng s1 = Rng(7).split(1), s2 = Rng(7).split(2);
    CHECK(s1.next_u64() != s2.next_u64());
}

TEST_CASE("rng ranges") {
    Rng r(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        CHECK((u >= 0.0 && u < 1.0));
        CHECK(r.uniform_int(7) < 7);
    }
    auto p = r.permutation(50);
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i] == i);
    }
}

TEST_CASE("normal draws have unit moments") {
    Rng r(5);
    double s = 0, ss = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s += z;
        ss += z * z;
    }
    CHECK(s / n == doctest::Approx(0.0).epsilon(0.01));
    CHECK(ss / n == doctest::Approx(1.0).epsilon(0.01));
}
