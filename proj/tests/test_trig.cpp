#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "unknot/trig.hpp"

using namespace unknot;

TEST_CASE("pi bracket is tight and ordered") {
    const auto& [lo, hi] = pi_bounds();
    CHECK(lo < hi);
    CHECK(hi - lo == Rat(1, pow(Int(10), 85)));
    CHECK(lo > Rat(314159, 100000));
    CHECK(hi < Rat(314160, 100000));
}

TEST_CASE("Enclosures are below 1e-30 wide for all oracle primes") {
    Rat bound(Int(1), pow(Int(10), 30));
    for (long p : {3L, 5L, 7L, 11L, 13L})
        for (long c = 0; c < p; ++c) {
            auto e = trig_enclosure(c, p);
            CHECK(e.cos_hi - e.cos_lo < bound);
            CHECK(e.sin_hi - e.sin_lo < bound);
            CHECK(e.cos_lo <= e.cos_hi);
            CHECK(e.sin_lo <= e.sin_hi);
        }
}

TEST_CASE("Known exact values are bracketed") {
    // c = 0: cos = 1, sin = 0
    auto z = trig_enclosure(0, 5);
    CHECK(z.cos_lo <= 1);
    CHECK(z.cos_hi >= 1);
    CHECK(z.sin_lo <= 0);
    CHECK(z.sin_hi >= 0);

    // c/p = 1/3: cos(2pi/3) = -1/2 exactly; sin(2pi/3) = sqrt(3)/2
    auto t = trig_enclosure(1, 3);
    CHECK(t.cos_lo <= Rat(-1, 2));
    CHECK(t.cos_hi >= Rat(-1, 2));
    CHECK(t.sin_lo > 0);
    CHECK(t.sin_lo * t.sin_lo <= Rat(3, 4));
    CHECK(t.sin_hi * t.sin_hi >= Rat(3, 4));

    // c/p = 2/3: sin negative
    auto u = trig_enclosure(2, 3);
    CHECK(u.sin_hi < 0);
    CHECK(u.cos_lo <= Rat(-1, 2));
    CHECK(u.cos_hi >= Rat(-1, 2));
}

TEST_CASE("Pythagorean identity holds inside the brackets") {
    for (long p : {3L, 5L, 7L, 13L})
        for (long c = 0; c < p; ++c) {
            auto e = trig_enclosure(c, p);
            // max over the box of cos^2+sin^2 must reach 1, min must not exceed it
            auto sqmax = [](const Rat& lo, const Rat& hi) {
                Rat m = abs(lo) > abs(hi) ? Rat(abs(lo)) : Rat(abs(hi));
                return Rat(m * m);
            };
            auto sqmin = [](const Rat& lo, const Rat& hi) {
                if (lo <= 0 && 0 <= hi) return Rat(0);
                Rat m = abs(lo) < abs(hi) ? Rat(abs(lo)) : Rat(abs(hi));
                return Rat(m * m);
            };
            CHECK(sqmin(e.cos_lo, e.cos_hi) + sqmin(e.sin_lo, e.sin_hi) <= 1);
            CHECK(sqmax(e.cos_lo, e.cos_hi) + sqmax(e.sin_lo, e.sin_hi) >= 1);
        }
}

TEST_CASE("Agrees with double trig") {
    for (long p : {5L, 7L, 11L})
        for (long c = 0; c < p; ++c) {
            auto e = trig_enclosure(c, p);
            double th = 2.0 * M_PI * double(c) / double(p);
            CHECK(std::abs(e.cos_lo.convert_to<double>() - std::cos(th)) < 1e-14);
            CHECK(std::abs(e.sin_lo.convert_to<double>() - std::sin(th)) < 1e-14);
        }
}

TEST_CASE("Domain validation") {
    CHECK_THROWS_AS(trig_enclosure(5, 5), std::domain_error);
    CHECK_THROWS_AS(trig_enclosure(-1, 5), std::domain_error);
}
