#pragma once

#include <stdexcept>
#include <string>

#include "unknot/arith.hpp"
#include "unknot/poly.hpp"

namespace unknot {

// Element r + s*sqrt(d) of the real quadratic field Q[sqrt(d)], d a fixed
// positive non-square integer. Exact arithmetic; enough to evaluate the
// system at binary-dihedral witnesses whose coordinates live in Q[sqrt(3)].
class QuadExt {
  public:
    QuadExt() : r_(0), s_(0), d_(0) {}
    explicit QuadExt(long long v) : r_(v), s_(0), d_(0) {}
    explicit QuadExt(Rat r) : r_(std::move(r)), s_(0), d_(0) {}
    QuadExt(Rat r, Rat s, Int d) : r_(std::move(r)), s_(std::move(s)), d_(std::move(d)) {
        if (s_ == 0) d_ = 0;
    }
    static QuadExt sqrt_of(Int d) { return QuadExt(0, 1, std::move(d)); }

    const Rat& rational_part() const { return r_; }
    const Rat& radical_part() const { return s_; }
    const Int& radicand() const { return d_; }
    bool is_rational() const { return s_ == 0; }
    bool is_zero() const { return r_ == 0 && s_ == 0; }

    friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
        Int d = join(a, b);
        return QuadExt(a.r_ + b.r_, a.s_ + b.s_, d);
    }
    friend QuadExt operator-(const QuadExt& a, const QuadExt& b) {
        Int d = join(a, b);
        return QuadExt(a.r_ - b.r_, a.s_ - b.s_, d);
    }
    QuadExt operator-() const { return QuadExt(-r_, -s_, d_); }
    friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
        Int d = join(a, b);
        return QuadExt(a.r_ * b.r_ + Rat(d) * a.s_ * b.s_,
                       a.r_ * b.s_ + a.s_ * b.r_, d);
    }
    QuadExt inverse() const {
        Rat nrm = r_ * r_ - Rat(d_) * s_ * s_;
        if (nrm == 0) throw std::domain_error("QuadExt: division by zero");
        return QuadExt(r_ / nrm, -s_ / nrm, d_);
    }
    friend QuadExt operator/(const QuadExt& a, const QuadExt& b) {
        return a * b.inverse();
    }

    bool operator==(const QuadExt& o) const {
        return r_ == o.r_ && s_ == o.s_ && (s_ == 0 || d_ == o.d_);
    }

    // Sign of r + s*sqrt(d), exact.
    int sign() const {
        if (s_ == 0) return r_ == 0 ? 0 : (r_ > 0 ? 1 : -1);
        if (r_ == 0) return s_ > 0 ? 1 : -1;
        // compare r^2 vs d*s^2 with the signs of r, s
        Rat r2 = r_ * r_, ds2 = Rat(d_) * s_ * s_;
        if (r_ > 0 && s_ > 0) return 1;
        if (r_ < 0 && s_ < 0) return -1;
        if (r_ > 0) return r2 > ds2 ? 1 : (r2 == ds2 ? 0 : -1);
        return r2 < ds2 ? 1 : (r2 == ds2 ? 0 : -1);
    }
    bool operator>(const QuadExt& o) const { return (*this - o).sign() > 0; }
    bool operator<(const QuadExt& o) const { return (*this - o).sign() < 0; }

    std::string str() const {
        std::string s = r_.str();
        if (s_ != 0) s += " + (" + s_.str() + ")*sqrt(" + d_.str() + ")";
        return s;
    }

  private:
    // The two operands must agree on the radicand (or be rational).
    static Int join(const QuadExt& a, const QuadExt& b) {
        if (a.s_ == 0) return b.d_;
        if (b.s_ == 0) return a.d_;
        if (a.d_ != b.d_) throw std::domain_error("QuadExt: mixed radicands");
        return a.d_;
    }

    Rat r_, s_;
    Int d_;
};

template <>
inline QuadExt ring_from_int<QuadExt>(const Int& c) { return QuadExt(Rat(c)); }

}  // namespace unknot
