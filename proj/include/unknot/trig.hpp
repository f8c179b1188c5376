#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "unknot/arith.hpp"

namespace unknot {

// Exact-rational enclosures of cos/sin at angles 2*pi*c/p, used to build
// certified binary-dihedral witness coordinates for any odd prime p.

// pi truncated/rounded-up at 86 decimals: a certified rational bracket.
inline const std::pair<Rat, Rat>& pi_bounds() {
    static const std::pair<Rat, Rat> b = [] {
        const std::string digits =
            "31415926535897932384626433832795028841971693993751"
            "058209749445923078164062862089986280"; // 3 + 85 decimals
        Int num(digits), den = 1;
        for (int i = 0; i < 85; ++i) den *= 10;
        return std::pair<Rat, Rat>(Rat(num, den), Rat(num + 1, den));
    }();
    return b;
}

// Enclosure of cos(t)+i*sin(t) for the exact angle t = 2*pi*c/p, as rational
// bounds of width below 1e-30. Alternating Taylor series evaluated in scaled
// integer fixed point (units of 10^-45) with directed rounding; the angle
// itself is carried as a scaled-integer bracket, so no Lipschitz pad is
// needed. Remainder is bounded by the first omitted term (the magnitudes
// decrease from k=4 on since t < 2*pi).
struct TrigEnclosure {
    Rat cos_lo, cos_hi, sin_lo, sin_hi;
};

inline TrigEnclosure trig_enclosure(long c, long p, int terms = 40) {
    if (p <= 0 || c < 0 || c >= p)
        throw std::domain_error("trig_enclosure: need 0 <= c < p");
    static const Int S = pow(Int(10), 45);
    static const Int PI_LO("3141592653589793238462643383279502884197169399");
    const Int PI_HI = PI_LO + 1;

    // nonnegative operands: cpp_int division truncates = floor
    auto mul_down = [](const Int& a, const Int& b) { return Int(a * b / S); };
    auto mul_up = [](const Int& a, const Int& b) {
        return Int((a * b + S - 1) / S);
    };
    auto div_up = [](const Int& a, const Int& d) { return Int((a + d - 1) / d); };

    Int tlo = 2 * PI_LO * c / p;
    Int thi = div_up(2 * PI_HI * c, Int(p));
    Int t2lo = mul_down(tlo, tlo), t2hi = mul_up(thi, thi);

    // term magnitudes (nonnegative intervals); accumulate alternating signs
    Int ctlo = S, cthi = S;      // t^0 / 0!
    Int stlo = tlo, sthi = thi;  // t^1 / 1!
    Int clo = 0, chi = 0, slo = 0, shi = 0;
    int sgn = 1;
    for (int k = 0; k < terms; ++k) {
        if (sgn > 0) {
            clo += ctlo; chi += cthi; slo += stlo; shi += sthi;
        } else {
            clo -= cthi; chi -= ctlo; slo -= sthi; shi -= stlo;
        }
        Int cd = Int(2 * k + 1) * (2 * k + 2);
        Int sd = Int(2 * k + 2) * (2 * k + 3);
        ctlo = mul_down(ctlo, t2lo) / cd;
        cthi = div_up(mul_up(cthi, t2hi), cd);
        stlo = mul_down(stlo, t2lo) / sd;
        sthi = div_up(mul_up(sthi, t2hi), sd);
        sgn = -sgn;
    }
    // alternating-series remainder: at most the first omitted term
    clo -= cthi; chi += cthi;
    slo -= sthi; shi += sthi;
    TrigEnclosure e;
    e.cos_lo = Rat(clo, S);
    e.cos_hi = Rat(chi, S);
    e.sin_lo = Rat(slo, S);
    e.sin_hi = Rat(shi, S);
    return e;
}

}  // namespace unknot
