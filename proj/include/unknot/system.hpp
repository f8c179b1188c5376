#pragma once
// Construction of the real polynomial system {P = 0, N != 0} attached to a
// Wirtinger presentation: SU(2) matrix templates with symbolic entries,
// relation matrices E_k, unit-norm constraints, and the two sum-of-squares
// aggregates P (equality) and N (inequality).

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unknot/poly.hpp"
#include "unknot/quadext.hpp"
#include "unknot/wirtinger.hpp"

namespace unknot {

// A polynomial with separate real and imaginary parts (integer coefficients).
struct CPoly {
    MultiPoly re, im;

    CPoly() = default;
    CPoly(MultiPoly r, MultiPoly i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend CPoly operator+(const CPoly& x, const CPoly& y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend CPoly operator-(const CPoly& x, const CPoly& y) {
        return {x.re - y.re, x.im - y.im};
    }
    friend CPoly operator*(const CPoly& x, const CPoly& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
};

// Symbolic 2x2 complex matrix; entries stored row-major.
struct PolyMat2 {
    std::array<CPoly, 4> e;

    CPoly& at(int r, int c) { return e.at(2 * r + c); }
    const CPoly& at(int r, int c) const { return e.at(2 * r + c); }

    bool is_zero() const {
        for (const CPoly& x : e)
            if (!x.is_zero()) return false;
        return true;
    }

    friend PolyMat2 operator-(const PolyMat2& x, const PolyMat2& y) {
        PolyMat2 z;
        for (int i = 0; i < 4; ++i) z.e[i] = x.e[i] - y.e[i];
        return z;
    }
    friend PolyMat2 operator*(const PolyMat2& x, const PolyMat2& y) {
        PolyMat2 z;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                z.at(r, c) =
                    x.at(r, 0) * y.at(0, c) + x.at(r, 1) * y.at(1, c);
        return z;
    }
};

// M_k = [[a_k + i b_k, c_k + i d_k], [-c_k + i d_k, a_k - i b_k]].
inline PolyMat2 su2_template(int k) {
    if (k < 1) throw std::out_of_range("su2_template: generator index < 1");
    auto v = [k](int comp) { return MultiPoly::variable(Var{k, comp}); };
    PolyMat2 m;
    m.at(0, 0) = {v(0), v(1)};
    m.at(0, 1) = {v(2), v(3)};
    m.at(1, 0) = {-v(2), v(3)};
    m.at(1, 1) = {v(0), -v(1)};
    return m;
}

// E_k for a conjugation relation. Plus form: E = M_{k+1} M_j - M_j M_k.
// Minus form: E = M_k M_j - M_j M_{k+1}. k+1 wraps to 1.
inline PolyMat2 relation_matrix(const Relation& rel,
                                const std::vector<PolyMat2>& templates) {
    const int n = int(templates.size());
    if (rel.k < 1 || rel.k > n || rel.j < 1 || rel.j > n)
        throw std::out_of_range("relation_matrix: relation index out of range");
    const int kp = rel.k % n + 1;
    const PolyMat2& Mk = templates[rel.k - 1];
    const PolyMat2& Mkp = templates[kp - 1];
    const PolyMat2& Mj = templates[rel.j - 1];
    if (rel.form == Form::Plus) return Mkp * Mj - Mj * Mk;
    return Mk * Mj - Mj * Mkp;
}

// First-row component polynomials {Re E11, Im E11, Re E12, Im E12} with
// identically-zero entries stripped.
inline std::vector<MultiPoly> rows_upper(const PolyMat2& E) {
    std::vector<MultiPoly> out;
    for (const MultiPoly* p :
         {&E.at(0, 0).re, &E.at(0, 0).im, &E.at(0, 1).re, &E.at(0, 1).im})
        if (!p->is_zero()) out.push_back(*p);
    return out;
}

// Second-row analogue, used to check the first-row/second-row redundancy.
inline std::vector<MultiPoly> rows_lower(const PolyMat2& E) {
    std::vector<MultiPoly> out;
    for (const MultiPoly* p :
         {&E.at(1, 0).re, &E.at(1, 0).im, &E.at(1, 1).re, &E.at(1, 1).im})
        if (!p->is_zero()) out.push_back(*p);
    return out;
}

// a_k^2 + b_k^2 + c_k^2 + d_k^2 - 1.
inline MultiPoly unit_norm_poly(int k) {
    if (k < 1) throw std::out_of_range("unit_norm_poly: generator index < 1");
    MultiPoly s = MultiPoly::constant(-1);
    for (int comp = 0; comp < 4; ++comp) {
        MultiPoly v = MultiPoly::variable(Var{k, comp});
        s += v * v;
    }
    return s;
}

// The assembled system. `members` holds every polynomial whose square enters
// P (relation rows grouped by k, then unit-norm rows); `distance_members`
// holds the linear differences whose squares sum to N. Both are kept so
// solvers can evaluate member-wise (sharper interval bounds than the
// expanded aggregates).
struct RealSystem {
    int n = 0;
    bool shared_trace = false;
    MultiPoly P, N;
    std::vector<MultiPoly> members;
    std::vector<std::vector<MultiPoly>> relation_rows;  // per relation k
    std::vector<MultiPoly> norm_rows;                   // per generator k
    std::vector<MultiPoly> distance_members;
};

// Identify a_k with a_1 for every k (meridians of a knot group are conjugate
// in SU(2), hence share their trace), shrinking the effective variable set.
inline MultiPoly identify_traces(const MultiPoly& p, int n) {
    std::vector<int> map(4 * n);
    for (int id = 0; id < 4 * n; ++id) map[id] = id;
    for (int k = 2; k <= n; ++k) map[Var{k, 0}.id()] = Var{1, 0}.id();
    return p.rename(map);
}

inline RealSystem build_system(const WirtingerPresentation& pres,
                               bool shared_trace = false) {
    if (pres.n < 1)
        throw std::invalid_argument(
            "build_system: presentation has no generators (trivial diagram; "
            "decide directly)");
    RealSystem sys;
    sys.n = pres.n;
    sys.shared_trace = shared_trace;

    std::vector<PolyMat2> templates;
    templates.reserve(pres.n);
    for (int k = 1; k <= pres.n; ++k) templates.push_back(su2_template(k));

    auto strip = [&](const MultiPoly& q) {
        return shared_trace ? identify_traces(q, pres.n) : q;
    };

    for (const Relation& rel : pres.relations) {
        std::vector<MultiPoly> rows;
        for (const MultiPoly& q : rows_upper(relation_matrix(rel, templates))) {
            MultiPoly r = strip(q);
            if (!r.is_zero()) rows.push_back(std::move(r));
        }
        sys.relation_rows.push_back(rows);
        for (const MultiPoly& r : rows) sys.members.push_back(r);
    }
    for (int k = 1; k <= pres.n; ++k) {
        MultiPoly q = strip(unit_norm_poly(k));
        sys.norm_rows.push_back(q);
        sys.members.push_back(q);
    }
    for (const MultiPoly& q : sys.members) sys.P += q.squared();

    for (int k = 2; k <= pres.n; ++k)
        for (int comp = 0; comp < 4; ++comp) {
            MultiPoly diff = strip(MultiPoly::variable(Var{k, comp}) -
                                   MultiPoly::variable(Var{1, comp}));
            if (diff.is_zero()) continue;  // identified components drop out
            sys.distance_members.push_back(diff);
        }
    for (const MultiPoly& q : sys.distance_members) sys.N += q.squared();
    return sys;
}

// ---- Evaluation ------------------------------------------------------------

namespace detail {
template <class T>
T evaluate_with(const MultiPoly& p, const std::vector<T>& point) {
    int max_id = -1;
    for (int id : p.variable_ids()) max_id = std::max(max_id, id);
    if (max_id >= int(point.size()))
        throw std::invalid_argument(
            "evaluate: point does not assign every variable (needs id " +
            std::to_string(max_id) + ", got " + std::to_string(point.size()) +
            " values)");
    return p.template evaluate<T>([&](int id) { return point[id]; });
}
}  // namespace detail

// Exact evaluation over the rationals. `point` is indexed by Var::id().
inline Rat evaluate(const MultiPoly& p, const std::vector<Rat>& point) {
    return detail::evaluate_with<Rat>(p, point);
}

// Exact evaluation over a quadratic extension of the rationals.
inline QuadExt evaluate(const MultiPoly& p, const std::vector<QuadExt>& point) {
    return detail::evaluate_with<QuadExt>(p, point);
}

// Floating-point evaluation with a single final rounding: the doubles are
// taken as exact rationals, the polynomial is evaluated exactly, and the
// result is rounded once.
inline double evaluate(const MultiPoly& p, const std::vector<double>& point) {
    std::vector<Rat> exact;
    exact.reserve(point.size());
    for (double x : point) exact.emplace_back(x);
    return detail::evaluate_with<Rat>(p, exact).convert_to<double>();
}

// ---- Statistics ------------------------------------------------------------

struct CoefficientStats {
    int degree = 0;        // max total degree over {P, N}
    int variable_count = 0;  // size of the ambient variable universe (4n)
    std::map<Int, long> coefficient_multiset;  // over the terms of P and N
    std::set<Int> coefficient_set;
    std::set<Int> pre_squaring_set;  // union over members and distances
};

inline CoefficientStats coefficient_stats(const RealSystem& sys) {
    CoefficientStats st;
    st.degree = std::max(sys.P.degree(), sys.N.degree());
    st.variable_count = 4 * sys.n;
    for (const MultiPoly* p : {&sys.P, &sys.N})
        for (const auto& [mono, coeff] : p->terms()) {
            (void)mono;
            st.coefficient_multiset[coeff] += 1;
            st.coefficient_set.insert(coeff);
        }
    for (const MultiPoly& q : sys.members)
        for (const Int& c : q.coefficient_set()) st.pre_squaring_set.insert(c);
    for (const MultiPoly& q : sys.distance_members)
        for (const Int& c : q.coefficient_set()) st.pre_squaring_set.insert(c);
    return st;
}

// ---- Serialization ---------------------------------------------------------

// A polynomial as a deterministic list of [coefficient, [variable names]]
// pairs in graded-lexicographic monomial order.
inline nlohmann::json poly_to_json(const MultiPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [mono, coeff] : p.terms()) {
        nlohmann::json names = nlohmann::json::array();
        for (uint16_t id : mono) names.push_back(Var::from_id(id).name());
        terms.push_back({coeff.str(), names});
    }
    return terms;
}

inline nlohmann::json system_to_json(const RealSystem& sys) {
    nlohmann::json members = nlohmann::json::array();
    for (const MultiPoly& q : sys.members) members.push_back(poly_to_json(q));
    nlohmann::json distances = nlohmann::json::array();
    for (const MultiPoly& q : sys.distance_members)
        distances.push_back(poly_to_json(q));
    return nlohmann::json{{"n", sys.n},
                          {"shared_trace", sys.shared_trace},
                          {"variable_count", 4 * sys.n},
                          {"P", poly_to_json(sys.P)},
                          {"N", poly_to_json(sys.N)},
                          {"members", members},
                          {"distance_members", distances}};
}

}  // namespace unknot
