#pragma once
// Polynomials flattened for fast repeated evaluation over doubles and double
// intervals. A slot map resolves each variable id to a dense coordinate
// position at compile time; mapping an id to kZeroSlot fixes that variable to
// exact zero (its terms are dropped), and mapping several ids to one slot
// evaluates the polynomial on the corresponding diagonal subspace (used by
// the refuter's "generators 2..m-1 equal generator 1" branches).

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "unknot/interval.hpp"
#include "unknot/poly.hpp"

namespace unknot {

inline constexpr int kZeroSlot = -1;

struct CompiledPoly {
    struct Term {
        double coeff;
        std::array<std::uint16_t, 4> slot;
        int len;
    };
    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }

    template <class T>
    T eval(const T* x) const {
        T acc{};
        for (const auto& t : terms) {
            T v{t.coeff};
            for (int i = 0; i < t.len; ++i) v = v * x[t.slot[i]];
            acc = acc + v;
        }
        return acc;
    }
    template <class T>
    T eval(const std::vector<T>& x) const {
        return eval(x.data());
    }
};

// Flattens `p` through `slot_of_id` (indexed by Var::id()). Throws if a term
// mentions an id outside the map or has degree above 4; coefficients always
// fit a double exactly here (they are tiny integers by construction).
inline CompiledPoly compile(const MultiPoly& p,
                            const std::vector<int>& slot_of_id) {
    CompiledPoly out;
    for (const auto& [mono, coeff] : p.terms()) {
        if (mono.size() > 4)
            throw std::invalid_argument("compile: degree above 4");
        if (coeff < -(1ll << 53) || coeff > (1ll << 53))
            throw std::invalid_argument("compile: coefficient too large");
        CompiledPoly::Term t{};
        t.coeff = double(static_cast<long long>(coeff));
        t.len = int(mono.size());
        bool drop = false;
        for (int i = 0; i < t.len; ++i) {
            int id = int(mono[size_t(i)]);
            if (id >= int(slot_of_id.size()))
                throw std::invalid_argument("compile: variable outside map");
            int s = slot_of_id[size_t(id)];
            if (s == kZeroSlot) {
                drop = true;
                break;
            }
            if (s < 0 || s > int(std::numeric_limits<std::uint16_t>::max()))
                throw std::invalid_argument("compile: bad slot");
            t.slot[size_t(i)] = std::uint16_t(s);
        }
        if (!drop) out.terms.push_back(t);
    }
    return out;
}

// Identity slot map over 4n variables.
inline std::vector<int> identity_slots(int n) {
    std::vector<int> m(size_t(4 * n));
    for (int i = 0; i < 4 * n; ++i) m[size_t(i)] = i;
    return m;
}

}  // namespace unknot
