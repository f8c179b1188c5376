#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "unknot/arith.hpp"
#include "unknot/poly.hpp"

namespace unknot {

// Closed interval with double endpoints (every finite double is a rational,
// stored exactly). Soundness strategy: every arithmetic endpoint computed in
// round-to-nearest is stepped one ulp outward; since IEEE +,-,*,/ are within
// half an ulp of the true real result, the step gives a guaranteed enclosure
// without touching the FP rounding mode. Compile with -ffp-contract=off.
struct Interval {
    double lo = 0.0, hi = 0.0;

    Interval() = default;
    explicit Interval(double x) : lo(x), hi(x) {}
    Interval(double l, double h) : lo(l), hi(h) {}
    explicit Interval(long long v) : lo(double(v)), hi(double(v)) {}

    static double down(double x) {
        return std::nextafter(x, -std::numeric_limits<double>::infinity());
    }
    static double up(double x) {
        return std::nextafter(x, std::numeric_limits<double>::infinity());
    }

    // Certified enclosure of an exact rational.
    static Interval from_rat(const Rat& r) {
        double x = r.convert_to<double>();
        Interval v(x);
        if (Rat(v.lo) > r) v.lo = down(v.lo);
        if (Rat(v.hi) < r) v.hi = up(v.hi);
        // one step is enough unless convert_to was badly off; widen until sound
        while (Rat(v.lo) > r) v.lo = down(v.lo);
        while (Rat(v.hi) < r) v.hi = up(v.hi);
        return v;
    }
    static Interval hull_of(const Rat& a, const Rat& b) {
        Interval ia = from_rat(a), ib = from_rat(b);
        return Interval(std::min(ia.lo, ib.lo), std::max(ia.hi, ib.hi));
    }

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool subset_of(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }
    bool interior_of(const Interval& o) const { return o.lo < lo && hi < o.hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return Interval(down(a.lo + b.lo), up(a.hi + b.hi));
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return Interval(down(a.lo - b.hi), up(a.hi - b.lo));
    }
    Interval operator-() const { return Interval(-hi, -lo); }
    friend Interval operator*(const Interval& a, const Interval& b) {
        double p1 = a.lo * b.lo, p2 = a.lo * b.hi;
        double p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return Interval(down(std::min(std::min(p1, p2), std::min(p3, p4))),
                        up(std::max(std::max(p1, p2), std::max(p3, p4))));
    }
    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }

    // Sharp square: lower endpoint is exactly 0 when 0 is inside.
    Interval sqr() const {
        if (lo >= 0.0) return Interval(std::max(0.0, down(lo * lo)), up(hi * hi));
        if (hi <= 0.0) return Interval(std::max(0.0, down(hi * hi)), up(lo * lo));
        double m = mag();
        return Interval(0.0, up(m * m));
    }

    friend Interval hull(const Interval& a, const Interval& b) {
        return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
    }
    // Intersection; caller checks intersects() first.
    friend Interval meet(const Interval& a, const Interval& b) {
        return Interval(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
    }

    std::string str() const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo, hi);
        return buf;
    }
};

template <>
inline Interval ring_from_int<Interval>(const Int& c) {
    // exact when |c| < 2^53 (always here); widened otherwise
    return Interval::from_rat(Rat(c));
}

}  // namespace unknot
