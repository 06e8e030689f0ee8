#include "doctest.h"

#include <cmath>

#include "cracksim/rng.hpp"

using cracksim::Rng;

TEST_CASE("same seed reproduces the sequence") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform stays in [0,1) and uniform_int hits its bounds") {
    Rng rng(1);
    bool saw_lo = false, saw_hi = false;
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const int k = rng.uniform_int(2, 5);
        CHECK(k >= 2);
        CHECK(k <= 5);
        saw_lo |= k == 2;
        saw_hi |= k == 5;
    }
    CHECK(saw_lo);
    CHECK(saw_hi);
}

TEST_CASE("mix derives distinct streams") {
    CHECK(Rng::mix(7, 0) != Rng::mix(7, 1));
    CHECK(Rng::mix(7, 0) != Rng::mix(8, 0));
    CHECK(Rng::mix(7, 3) == Rng::mix(7, 3));
}

TEST_CASE("normal has roughly unit variance") {
    Rng rng(99);
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
