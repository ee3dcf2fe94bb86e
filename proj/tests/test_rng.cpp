#include "doctest.h"

#include <cmath>

#include "torusheat/rng.hpp"

using namespace torusheat;

TEST_CASE("streams are deterministic and stream-separated") {
    RngStream a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    bool all_equal = true;
    RngStream a2(42, 7);
    for (int i = 0; i < 100; ++i) all_equal = all_equal && (a2.next_u64() == c.next_u64());
    CHECK_FALSE(all_equal);
}

TEST_CASE("uniform stays in [0,1) and uniform_pos in (0,1]") {
    RngStream rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = rng.uniform_pos();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("ziggurat normal has the right moments") {
    RngStream rng(2024);
    const int n = 400000;
    double s1 = 0, s2 = 0, s4 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        s1 += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    s1 /= n;
    s2 /= n;
    s4 /= n;
    CHECK(std::abs(s1) < 0.01);          // mean 0, se ~ 0.0016
    CHECK(std::abs(s2 - 1.0) < 0.02);    // variance 1
    CHECK(std::abs(s4 - 3.0) < 0.15);    // kurtosis 3
}

TEST_CASE("normal tail frequencies match the Gaussian") {
    RngStream rng(77);
    const int n = 200000;
    int beyond2 = 0, beyond3 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = std::abs(rng.normal());
        if (x > 2.0) ++beyond2;
        if (x > 3.0) ++beyond3;
    }
    CHECK(std::abs(beyond2 / double(n) - 0.0455) < 0.003);
    CHECK(std::abs(beyond3 / double(n) - 0.0027) < 0.0008);
}
