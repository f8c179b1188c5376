#pragma once
// Fox p-coloring oracle: count solutions of the mod-p congruence system
// {2 c_j - c_k - c_{k+1} = 0} by Gaussian elimination, extract a canonical
// nontrivial coloring when one exists, and lift colorings to binary-dihedral
// SU(2) representations (exact in Q[sqrt(3)] for p = 3, certified interval
// enclosures for any p, doubles for seeding).

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unknot/arith.hpp"
#include "unknot/interval.hpp"
#include "unknot/quadext.hpp"
#include "unknot/representation.hpp"
#include "unknot/trig.hpp"
#include "unknot/wirtinger.hpp"

namespace unknot {

struct Coloring {
    int p = 3;
    std::vector<int> colors;  // colors[k-1] is the residue of arc k

    bool operator==(const Coloring& o) const {
        return p == o.p && colors == o.colors;
    }
};

inline bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

namespace detail {

inline void require_odd_prime(int p) {
    if (!is_odd_prime(p))
        throw std::invalid_argument("modulus " + std::to_string(p) +
                                    " is not an odd prime");
}

inline int mod_pos(long long x, int p) {
    long long r = x % p;
    return int(r < 0 ? r + p : r);
}

inline int mod_inverse(int a, int p) {  // p prime, a != 0 mod p
    int t = 0, new_t = 1, r = p, new_r = mod_pos(a, p);
    while (new_r != 0) {
        int q = r / new_r;
        int tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return mod_pos(t, p);
}

// Coloring congruences as an n x n matrix over Z_p: row k encodes
// 2 c_j - c_k - c_{k+1} = 0 (indices may coincide; coefficients merge).
inline std::vector<std::vector<int>> coloring_matrix(
    const WirtingerPresentation& pres, int p) {
    const int n = pres.n;
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const Relation& rel : pres.relations) {
        std::vector<int>& row = m[rel.k - 1];
        row[rel.j - 1] = mod_pos(row[rel.j - 1] + 2, p);
        row[rel.k - 1] = mod_pos(row[rel.k - 1] - 1, p);
        row[rel.k % n] = mod_pos(row[rel.k % n] - 1, p);
    }
    return m;
}

// Reduced row echelon form in place; returns the pivot column of each
// pivot row (so rank = pivots.size()).
inline std::vector<int> rref_mod(std::vector<std::vector<int>>& m, int p) {
    std::vector<int> pivots;
    const int rows = int(m.size());
    const int cols = rows == 0 ? 0 : int(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[r], m[pivot]);
        int inv = mod_inverse(m[r][c], p);
        for (int cc = 0; cc < cols; ++cc)
            m[r][cc] = mod_pos(1LL * m[r][cc] * inv, p);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            int f = m[i][c];
            for (int cc = 0; cc < cols; ++cc)
                m[i][cc] = mod_pos(m[i][cc] - 1LL * f * m[r][cc], p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline bool is_valid_coloring(const WirtingerPresentation& pres,
                              const Coloring& col) {
    if (!is_odd_prime(col.p) || int(col.colors.size()) != pres.n) return false;
    for (int c : col.colors)
        if (c < 0 || c >= col.p) return false;
    for (const Relation& rel : pres.relations) {
        long long lhs = 2LL * col.colors[rel.j - 1];
        long long rhs = col.colors[rel.k - 1] + col.colors[rel.k % pres.n];
        if (detail::mod_pos(lhs - rhs, col.p) != 0) return false;
    }
    return true;
}

inline bool is_trivial(const Coloring& col) {
    for (int c : col.colors)
        if (c != col.colors.front()) return false;
    return true;
}

// Exact count p^(n - rank) of the congruence system's solutions.
inline Int count_colorings(const WirtingerPresentation& pres, int p) {
    detail::require_odd_prime(p);
    if (pres.n < 1)
        throw std::invalid_argument(
            "count_colorings: presentation has no generators");
    std::vector<std::vector<int>> m = detail::coloring_matrix(pres, p);
    int rank = int(detail::rref_mod(m, p).size());
    Int count = 1;
    for (int i = 0; i < pres.n - rank; ++i) count *= p;
    return count;
}

inline bool is_colorable(const WirtingerPresentation& pres, int p) {
    return count_colorings(pres, p) > p;
}

// Canonical nontrivial coloring when one exists: the first non-constant
// null-space basis vector, shifted so c_1 = 0 and scaled so the first
// nonzero color is 1 (both operations preserve the congruences). With
// c_1 = 0 and first nonzero color 1 <= (p-1)/2, the binary-dihedral lift
// lands directly in gauge normal form.
inline std::optional<Coloring> find_nontrivial_coloring(
    const WirtingerPresentation& pres, int p) {
    detail::require_odd_prime(p);
    const int n = pres.n;
    if (n < 1)
        throw std::invalid_argument(
            "find_nontrivial_coloring: presentation has no generators");
    std::vector<std::vector<int>> m = detail::coloring_matrix(pres, p);
    std::vector<int> pivots = detail::rref_mod(m, p);
    std::vector<bool> is_pivot_col(n, false);
    for (int c : pivots) is_pivot_col[c] = true;

    for (int f = 0; f < n; ++f) {  // each free column yields a basis vector
        if (is_pivot_col[f]) continue;
        std::vector<int> v(n, 0);
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = detail::mod_pos(-m[r][f], p);
        bool constant = true;
        for (int i = 1; i < n; ++i)
            if (v[i] != v[0]) constant = false;
        if (constant) continue;

        for (int i = n - 1; i >= 0; --i) v[i] = detail::mod_pos(v[i] - v[0], p);
        int first_nonzero = 0;
        for (int i = 0; i < n; ++i)
            if (v[i] != 0) {
                first_nonzero = v[i];
                break;
            }
        int scale = detail::mod_inverse(first_nonzero, p);
        for (int i = 0; i < n; ++i) v[i] = detail::mod_pos(1LL * v[i] * scale, p);
        return Coloring{p, v};
    }
    return std::nullopt;
}

// ---- Binary-dihedral lifts --------------------------------------------------
// Color c lifts to the traceless unit quaternion
// (0, cos(2 pi c / p), sin(2 pi c / p), 0).

inline Representation coloring_to_rep(const Coloring& col) {
    Representation rep;
    const double tau = 2.0 * std::acos(-1.0);
    for (int c : col.colors) {
        double t = tau * c / col.p;
        rep.tuples.push_back({0.0, std::cos(t), std::sin(t), 0.0});
    }
    return rep;
}

// Exact coordinates in Q[sqrt(3)]; only p = 3 admits a quadratic extension.
inline std::vector<QuadExt> coloring_to_rep_exact(const Coloring& col) {
    if (col.p != 3)
        throw std::domain_error(
            "exact quadratic-extension lift exists only for p = 3");
    std::vector<QuadExt> pt(4 * col.colors.size(), QuadExt(0));
    const QuadExt minus_half(Rat(-1, 2));
    const QuadExt root3_half(Rat(0), Rat(1, 2), Int(3));
    for (size_t k = 0; k < col.colors.size(); ++k) {
        QuadExt b(1), c(0);
        if (col.colors[k] == 1) {
            b = minus_half;
            c = root3_half;
        } else if (col.colors[k] == 2) {
            b = minus_half;
            c = -root3_half;
        }
        pt[4 * k + 1] = b;
        pt[4 * k + 2] = c;
    }
    return pt;
}

// Interval enclosures (width < 1e-30 per coordinate) for any odd prime p.
inline std::vector<Interval> coloring_to_rep_enclosure(const Coloring& col) {
    std::vector<Interval> pt(4 * col.colors.size(), Interval(0.0, 0.0));
    for (size_t k = 0; k < col.colors.size(); ++k) {
        TrigEnclosure t = trig_enclosure(col.colors[k], col.p);
        pt[4 * k + 1] = Interval::hull_of(t.cos_lo, t.cos_hi);
        pt[4 * k + 2] = Interval::hull_of(t.sin_lo, t.sin_hi);
    }
    return pt;
}

// Coloring counts for a list of primes, keyed by the prime rendered as a
// string (counts can exceed 2^53, so they are strings too).
inline nlohmann::json coloring_counts_json(const WirtingerPresentation& pres,
                                           const std::vector<int>& primes) {
    nlohmann::json out;
    for (int p : primes)
        out[std::to_string(p)] = count_colorings(pres, p).str();
    return out;
}

}  // namespace unknot
