#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "unknot/arith.hpp"

namespace unknot {

// Variable universe: one of {a,b,c,d} per generator. Packed id = 4*(gen-1)+comp.
struct Var {
    int gen;   // 1-based generator index
    int comp;  // 0..3 for a,b,c,d

    static constexpr const char* comp_names = "abcd";

    int id() const { return 4 * (gen - 1) + comp; }
    static Var from_id(int id) { return Var{id / 4 + 1, id % 4}; }

    std::string name() const {
        return std::string(1, comp_names[comp]) + std::to_string(gen);
    }
    bool operator==(const Var&) const = default;
};

// Monomial: multiset of variable ids, stored sorted ascending.
using Mono = std::vector<std::uint16_t>;

// Graded-lexicographic order on monomials by (gen, comp): total degree first,
// then lexicographic on the sorted id sequence. Lower variable id = earlier.
struct MonoOrder {
    bool operator()(const Mono& x, const Mono& y) const {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    }
};

// Injects an exact integer coefficient into the evaluation ring. The default
// goes through long long (plenty here: coefficients are tiny by construction);
// rings with exact big-int conversions specialize.
template <class T>
inline T ring_from_int(const Int& c) {
    if (c < std::numeric_limits<long long>::min() ||
        c > std::numeric_limits<long long>::max())
        throw std::overflow_error("coefficient exceeds ring injection range");
    return T(static_cast<long long>(c));
}
template <>
inline Rat ring_from_int<Rat>(const Int& c) { return Rat(c); }
template <>
inline Int ring_from_int<Int>(const Int& c) { return c; }

// Sparse exact-integer multivariate polynomial.
class MultiPoly {
  public:
    using TermMap = std::map<Mono, Int, MonoOrder>;

    MultiPoly() = default;
    static MultiPoly constant(Int c) {
        MultiPoly p;
        if (c != 0) p.terms_[{}] = std::move(c);
        return p;
    }
    static MultiPoly variable(Var v) {
        MultiPoly p;
        p.terms_[{static_cast<std::uint16_t>(v.id())}] = 1;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max<int>(d, int(m.size()));
        return d;
    }

    std::set<Int> coefficient_set() const {
        std::set<Int> s;
        for (const auto& [m, c] : terms_) s.insert(c);
        return s;
    }

    std::set<int> variable_ids() const {
        std::set<int> s;
        for (const auto& [m, c] : terms_)
            for (auto v : m) s.insert(v);
        return s;
    }

    void add_term(Mono m, const Int& c) {
        if (c == 0) return;
        std::sort(m.begin(), m.end());
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    MultiPoly operator-() const {
        MultiPoly r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Mono m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                r.add_term(std::move(m), ca * cb);
            }
        return r;
    }

    MultiPoly squared() const { return (*this) * (*this); }

    // d/dv, exact.
    MultiPoly derivative(Var v) const {
        const auto id = static_cast<std::uint16_t>(v.id());
        MultiPoly r;
        for (const auto& [m, c] : terms_) {
            int mult = int(std::count(m.begin(), m.end(), id));
            if (mult == 0) continue;
            Mono dm;
            dm.reserve(m.size() - 1);
            bool dropped = false;
            for (auto x : m) {
                if (!dropped && x == id) { dropped = true; continue; }
                dm.push_back(x);
            }
            r.add_term(std::move(dm), c * mult);
        }
        return r;
    }

    // Renames variables through `map` (old id -> new id). Merges collisions.
    MultiPoly rename(const std::vector<int>& map) const {
        MultiPoly r;
        for (const auto& [m, c] : terms_) {
            Mono nm;
            nm.reserve(m.size());
            for (auto x : m) nm.push_back(static_cast<std::uint16_t>(map.at(x)));
            r.add_term(std::move(nm), c);
        }
        return r;
    }

    // Exact evaluation over any commutative ring T. `point(id)` supplies the
    // value of the variable with packed id. Coefficients are injected via
    // T(long long) — coefficients in this artifact always fit.
    template <class T, class PointFn>
    T evaluate(PointFn&& point) const {
        T acc = ring_from_int<T>(Int(0));
        for (const auto& [m, c] : terms_) {
            T t = ring_from_int<T>(c);
            for (auto v : m) t = t * point(int(v));
            acc = acc + t;
        }
        return acc;
    }

    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += c > 0 ? " + " : " - ";
            else if (c < 0) s += "-";
            Int ac = abs(c);
            bool wrote = false;
            if (ac != 1 || m.empty()) {
                s += ac.str();
                wrote = true;
            }
            int i = 0;
            while (i < int(m.size())) {
                int j = i;
                while (j < int(m.size()) && m[j] == m[i]) ++j;
                if (wrote) s += "*";
                s += Var::from_id(m[i]).name();
                if (j - i > 1) s += "^" + std::to_string(j - i);
                wrote = true;
                i = j;
            }
        }
        return s;
    }

  private:
    TermMap terms_;
};

}  // namespace unknot
