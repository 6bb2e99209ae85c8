#include <doctest.h>

#include <set>

#include "teachml/rng.hpp"

using namespace teachml;

TEST_CASE("same seed gives the same stream") {
    Rng a(1234), b(1234);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("bounded stays in range") {
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        CHECK(rng.bounded(10) < 10);
        CHECK(rng.bounded(1) == 0);
    }
}

TEST_CASE("next_double is in [0,1)") {
    Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.next_double();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("uniform_int covers the inclusive range") {
    Rng rng(3);
    std::set<long> seen;
    for (int i = 0; i < 500; ++i) {
        const long v = rng.uniform_int(12, 15);
        CHECK(v >= 12);
        CHECK(v <= 15);
        seen.insert(v);
    }
    CHECK(seen.size() == 4);
}

TEST_CASE("mix_seed separates streams") {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t t = 0; t < 200; ++t) seeds.insert(mix_seed(42, t));
    CHECK(seeds.size() == 200);
    CHECK(mix_seed(42, 0) != mix_seed(43, 0));
    CHECK(mix_seed(42, 5) == mix_seed(42, 5));
}
