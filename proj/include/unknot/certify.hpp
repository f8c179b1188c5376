#pragma once
// Witness certification. A certificate states, with proof:
//   - every equality member's absolute value is at most `residual_bound`
//     on the certified region (a single point for exact methods, a small
//     box for the interval method), and
//   - N >= n_lower > 0 there.
//
// Methods, tried in order of strength:
//   exact-rational    P = 0 and N > 0 verified in exact rational arithmetic
//                     at the witness's (exactly representable) coordinates.
//   exact-quadratic   same, in Q[sqrt(d)] (binary-dihedral lifts for p = 3).
//   exact-coloring    an exact mod-p congruence check. A nontrivial Fox
//                     p-coloring lifts to g_k = (0, cos t_k, sin t_k, 0),
//                     t_k = 2*pi*c_k/p, and for planar unit quaternions
//                     u v = (-cos(beta - alpha), 0, 0, sin(beta - alpha))
//                     depends only on the angle difference, so the relation
//                     g_a g_j = g_j g_b holds exactly iff
//                     2 c_j = c_a + c_b (mod p) - which is the verified
//                     congruence. Hence residual_bound is exactly 0; the
//                     reported n_lower comes from certified interval
//                     enclosures of the lift.
//   krawczyk          an interval Krawczyk contraction on the gauge-fixed,
//                     trace-pinned projected system G = Q^T F proves there
//                     is a unique projected zero in the certified box; the
//                     residual and N bounds are then interval evaluations
//                     over that (tiny) box. The gauge slice substitutes
//                     c_1 = d_1 = 0 and d_m = 0 exactly (m = the generator
//                     the gauge pins), and the trace pin a_1 = a_1(witness)
//                     cuts the character direction, making the zero
//                     isolated. The full equality system is overdetermined
//                     by one row on this slice (the solution set of the
//                     complete system is a curve: character arc x scale),
//                     which is why the projection Q^T - an orthonormal
//                     basis of the Jacobian's column space at the midpoint
//                     - is applied before contracting.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unknot/coloring.hpp"
#include "unknot/compiled.hpp"
#include "unknot/interval.hpp"
#include "unknot/representation.hpp"
#include "unknot/system.hpp"

namespace unknot {

// Exact rational coordinates of a representation (doubles are dyadic
// rationals; the conversion is lossless).
inline std::vector<Rat> exact_point_of(const Representation& r) {
    std::vector<Rat> pt;
    pt.reserve(4 * r.tuples.size());
    for (double v : r.flatten()) pt.emplace_back(v);
    return pt;
}

struct Certificate {
    std::string method;  // exact-rational | exact-quadratic | exact-coloring
                         // | krawczyk
    Rat residual_bound = Rat(0);
    Rat n_lower = Rat(0);
    // exact-coloring payload
    int p = 0;
    std::vector<int> colors;
    // exact coordinate strings (exact-rational / exact-quadratic)
    std::vector<std::string> exact_coords;
    std::string exact_n;
    // krawczyk payload: certified box in full coordinates
    std::vector<double> box_lo, box_hi;
    bool unique_in_box = false;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["method"] = method;
        j["residual_bound"] = residual_bound.str();
        j["n_lower"] = n_lower.str();
        if (p != 0) {
            j["p"] = p;
            j["colors"] = colors;
        }
        if (!exact_coords.empty()) {
            j["exact_coords"] = exact_coords;
            j["exact_n"] = exact_n;
        }
        if (!box_lo.empty()) {
            j["box_lo"] = box_lo;
            j["box_hi"] = box_hi;
            j["unique_in_box"] = unique_in_box;
        }
        return j;
    }
};

// ---- exact paths ------------------------------------------------------------

inline std::optional<Certificate> certify_exact_rational(
    const RealSystem& sys, const std::vector<Rat>& pt) {
    if (int(pt.size()) != 4 * sys.n) return std::nullopt;
    if (evaluate(sys.P, pt) != 0) return std::nullopt;
    Rat n = evaluate(sys.N, pt);
    if (!(n > 0)) return std::nullopt;
    Certificate c;
    c.method = "exact-rational";
    c.n_lower = n;
    for (const Rat& v : pt) c.exact_coords.push_back(v.str());
    c.exact_n = n.str();
    return c;
}

namespace detail {
// Certified rational lower bound of r + s*sqrt(d) (d >= 0). Uses the fact
// that IEEE sqrt is correctly rounded, so one outward ulp of
// sqrt(double(d)) encloses the true root when d converts exactly.
inline Rat quad_lower_bound(const QuadExt& v) {
    if (v.radical_part() == 0) return v.rational_part();
    double ds = Int(v.radicand()).convert_to<double>();
    double s = std::sqrt(ds);
    Interval root(Interval::down(s), Interval::up(s));
    Interval e = Interval::from_rat(v.rational_part()) +
                 Interval::from_rat(v.radical_part()) *
                     Interval(root.lo, root.hi);
    return Rat(e.lo);
}
}  // namespace detail

inline std::optional<Certificate> certify_exact_quadratic(
    const RealSystem& sys, const std::vector<QuadExt>& pt) {
    if (int(pt.size()) != 4 * sys.n) return std::nullopt;
    auto point = [&](int id) { return pt[size_t(id)]; };
    for (const MultiPoly& q : sys.members)
        if (!q.evaluate<QuadExt>(point).is_zero()) return std::nullopt;
    QuadExt n = sys.N.evaluate<QuadExt>(point);
    if (!(n.sign() > 0)) return std::nullopt;
    Certificate c;
    c.method = "exact-quadratic";
    c.n_lower = detail::quad_lower_bound(n);
    for (const QuadExt& v : pt) c.exact_coords.push_back(v.str());
    c.exact_n = n.str();
    return c;
}

// ---- coloring path ----------------------------------------------------------

inline std::optional<Certificate> certify_coloring(
    const WirtingerPresentation& pres, const RealSystem& sys,
    const Coloring& col) {
    if (!is_valid_coloring(pres, col) || is_trivial(col)) return std::nullopt;
    Certificate c;
    c.method = "exact-coloring";
    c.p = col.p;
    c.colors = col.colors;

    // Certified interval enclosure of the lift: sanity-check the (exactly
    // zero) residuals and extract a certified positive lower bound for N.
    std::vector<Interval> enc = coloring_to_rep_enclosure(col);
    auto point = [&](int id) { return enc[size_t(id)]; };
    for (const MultiPoly& q : sys.members) {
        Interval e = q.evaluate<Interval>(point);
        if (e.mag() > 1e-9) return std::nullopt;  // would indicate a bug
    }
    Interval n = sys.N.evaluate<Interval>(point);
    if (!(n.lo > 0)) return std::nullopt;
    c.n_lower = Rat(n.lo);

    // Flagship upgrade for p = 3: the lift lives in Q[sqrt(3)], where the
    // equalities can be verified exactly.
    if (col.p == 3) {
        auto exact = certify_exact_quadratic(sys, coloring_to_rep_exact(col));
        if (!exact) return std::nullopt;  // would indicate a bug
        c.method = "exact-coloring+quadratic";
        c.exact_coords = exact->exact_coords;
        c.exact_n = exact->exact_n;
        c.n_lower = exact->n_lower;
    }
    return c;
}

// ---- interval Krawczyk path -------------------------------------------------

struct KrawczykOptions {
    double radius = 1e-6;       // initial box half-width
    int max_tighten = 12;       // contraction re-intersection rounds
    double off_slice_tol = 1e-9;  // witness must sit this close to the slice
};

namespace detail {

struct KrawczykWork {
    int nu = 0;                          // reduced dimension
    std::vector<int> kept_ids;           // reduced id -> full id
    std::vector<int> slot_of_id;         // full id -> reduced slot / kZeroSlot
    std::vector<CompiledPoly> f;         // members on the slice
    std::vector<std::vector<std::pair<int, CompiledPoly>>> grad;
    int pin_slot = 0;                    // slot of a_1
    double pin_value = 0;                // a_1 at the witness (exact double)
};

inline Interval row_eval(const KrawczykWork& w, int row,
                         const std::vector<Interval>& x) {
    if (row < int(w.f.size())) return w.f[size_t(row)].eval(x);
    return x[size_t(w.pin_slot)] - Interval(w.pin_value);
}

}  // namespace detail

inline std::optional<Certificate> certify_krawczyk(
    const RealSystem& sys, const Representation& rep,
    const KrawczykOptions& opts = {}) {
    if (int(rep.tuples.size()) != sys.n || sys.n < 1) return std::nullopt;
    Representation w = gauge_normalize(rep);
    std::vector<double> x0 = w.flatten();

    // Gauge slice: c_1 = d_1 = 0 and d_m = 0 for the first generator with a
    // nonzero (c, d)-part (mirrors gauge_normalize's pinned generator).
    int m = 0;
    for (int k = 1; k <= sys.n; ++k) {
        double c = x0[size_t(4 * (k - 1) + 2)], d = x0[size_t(4 * (k - 1) + 3)];
        if (std::hypot(c, d) > 1e-6) {
            m = k;
            break;
        }
    }
    std::vector<int> dropped = {2, 3};  // c_1, d_1
    if (m >= 1) dropped.push_back(4 * (m - 1) + 3);
    for (int id : dropped)
        if (std::fabs(x0[size_t(id)]) > opts.off_slice_tol) return std::nullopt;

    detail::KrawczykWork wk;
    wk.slot_of_id.assign(size_t(4 * sys.n), kZeroSlot);
    for (int id = 0; id < 4 * sys.n; ++id) {
        if (std::find(dropped.begin(), dropped.end(), id) != dropped.end())
            continue;
        wk.slot_of_id[size_t(id)] = int(wk.kept_ids.size());
        wk.kept_ids.push_back(id);
    }
    wk.nu = int(wk.kept_ids.size());
    for (const MultiPoly& q : sys.members) {
        wk.f.push_back(compile(q, wk.slot_of_id));
        std::vector<std::pair<int, CompiledPoly>> gr;
        for (int id : q.variable_ids()) {
            int s = wk.slot_of_id[size_t(id)];
            if (s == kZeroSlot) continue;
            MultiPoly d = q.derivative(Var::from_id(id));
            CompiledPoly cd = compile(d, wk.slot_of_id);
            if (!cd.is_zero()) gr.emplace_back(s, std::move(cd));
        }
        wk.grad.push_back(std::move(gr));
    }
    wk.pin_slot = wk.slot_of_id[0];  // a_1 is never dropped
    wk.pin_value = x0[0];

    const int rows = int(wk.f.size()) + 1;
    const int nu = wk.nu;

    // Midpoint and initial box.
    std::vector<double> mid(static_cast<size_t>(nu));
    std::vector<Interval> X(static_cast<size_t>(nu));
    for (int i = 0; i < nu; ++i) {
        mid[size_t(i)] = x0[size_t(wk.kept_ids[size_t(i)])];
        X[size_t(i)] = Interval(mid[size_t(i)] - opts.radius,
                                mid[size_t(i)] + opts.radius);
    }

    // Orthonormal column-space basis Q of the Jacobian at the midpoint.
    Eigen::MatrixXd Jmid = Eigen::MatrixXd::Zero(rows, nu);
    for (int r = 0; r + 1 < rows; ++r)
        for (const auto& [slot, dp] : wk.grad[size_t(r)])
            Jmid(r, slot) = dp.eval(mid);
    Jmid(rows - 1, wk.pin_slot) = 1.0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Jmid);
    qr.setThreshold(1e-10);
    if (qr.rank() < nu) return std::nullopt;  // not isolated on the slice
    Eigen::MatrixXd Q =
        qr.householderQ() * Eigen::MatrixXd::Identity(rows, nu);

    std::vector<Interval> box = X;
    bool contracted = false;
    for (int round = 0; round < opts.max_tighten; ++round) {
        // Interval Jacobian of the projected system G = Q^T F over the box.
        std::vector<Interval> JG(static_cast<size_t>(nu) * static_cast<size_t>(nu));
        {
            std::vector<std::vector<Interval>> JF(
                static_cast<size_t>(rows),
                std::vector<Interval>(static_cast<size_t>(nu)));
            for (int r = 0; r + 1 < rows; ++r)
                for (const auto& [slot, dp] : wk.grad[size_t(r)])
                    JF[size_t(r)][size_t(slot)] = dp.eval(box);
            JF[size_t(rows - 1)][size_t(wk.pin_slot)] = Interval(1.0);
            for (int i = 0; i < nu; ++i)
                for (int j = 0; j < nu; ++j) {
                    Interval acc;
                    for (int r = 0; r < rows; ++r)
                        acc += Interval(Q(r, i)) * JF[size_t(r)][size_t(j)];
                    JG[size_t(i) * size_t(nu) + size_t(j)] = acc;
                }
        }
        Eigen::MatrixXd JGmid(nu, nu);
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nu; ++j)
                JGmid(i, j) = JG[size_t(i) * size_t(nu) + size_t(j)].mid();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(JGmid);
        if (!lu.isInvertible()) return std::nullopt;
        Eigen::MatrixXd Y = lu.inverse();

        // Midpoint of the current box, G at that midpoint.
        std::vector<double> bm(static_cast<size_t>(nu));
        std::vector<Interval> bmi(static_cast<size_t>(nu));
        for (int i = 0; i < nu; ++i) {
            bm[size_t(i)] = box[size_t(i)].mid();
            bmi[size_t(i)] = Interval(bm[size_t(i)]);
        }
        std::vector<Interval> Gm(static_cast<size_t>(nu));
        {
            std::vector<Interval> Fm(static_cast<size_t>(rows));
            for (int r = 0; r < rows; ++r)
                Fm[size_t(r)] = detail::row_eval(wk, r, bmi);
            for (int i = 0; i < nu; ++i) {
                Interval acc;
                for (int r = 0; r < rows; ++r)
                    acc += Interval(Q(r, i)) * Fm[size_t(r)];
                Gm[size_t(i)] = acc;
            }
        }

        // K = bm - Y*G(bm) + (I - Y*JG(box)) * (box - bm)
        std::vector<Interval> K(static_cast<size_t>(nu));
        bool inside = true;
        for (int i = 0; i < nu; ++i) {
            Interval acc(bm[size_t(i)]);
            for (int j = 0; j < nu; ++j) acc -= Interval(Y(i, j)) * Gm[size_t(j)];
            for (int j = 0; j < nu; ++j) {
                Interval coef = (i == j ? Interval(1.0) : Interval(0.0));
                for (int r = 0; r < nu; ++r)
                    coef -= Interval(Y(i, r)) *
                            JG[size_t(r) * size_t(nu) + size_t(j)];
                acc += coef * (box[size_t(j)] - Interval(bm[size_t(j)]));
            }
            K[size_t(i)] = acc;
            if (!K[size_t(i)].interior_of(box[size_t(i)])) inside = false;
        }
        if (!inside) {
            if (contracted) break;  // keep the last certified box
            return std::nullopt;
        }
        contracted = true;
        // Tighten and iterate; stop when the width no longer improves much.
        double before = 0, after = 0;
        for (int i = 0; i < nu; ++i) {
            before = std::max(before, box[size_t(i)].width());
            box[size_t(i)] = meet(K[size_t(i)], box[size_t(i)]);
            after = std::max(after, box[size_t(i)].width());
        }
        if (after > 0.5 * before && round > 0) break;
    }
    if (!contracted) return std::nullopt;

    // Bounds over the certified box, in full coordinates.
    std::vector<Interval> full(static_cast<size_t>(4 * sys.n), Interval(0.0));
    for (int i = 0; i < nu; ++i)
        full[size_t(wk.kept_ids[size_t(i)])] = box[size_t(i)];
    auto point = [&](int id) { return full[size_t(id)]; };
    double bound = 0;
    for (const MultiPoly& q : sys.members)
        bound = std::max(bound, q.evaluate<Interval>(point).mag());
    Interval nv = sys.N.evaluate<Interval>(point);
    if (!(nv.lo > 0)) return std::nullopt;

    Certificate c;
    c.method = "krawczyk";
    c.residual_bound = Rat(bound);
    c.n_lower = Rat(nv.lo);
    c.unique_in_box = true;
    c.box_lo.resize(size_t(4 * sys.n), 0.0);
    c.box_hi.resize(size_t(4 * sys.n), 0.0);
    for (int i = 0; i < nu; ++i) {
        c.box_lo[size_t(wk.kept_ids[size_t(i)])] = box[size_t(i)].lo;
        c.box_hi[size_t(wk.kept_ids[size_t(i)])] = box[size_t(i)].hi;
    }
    return c;
}

// ---- combined entry point ---------------------------------------------------

// Certifies a numeric witness: exact rational arithmetic first (succeeds only
// when the coordinates happen to be an exact solution), then the Krawczyk
// contraction. The contraction's acceptance is the contract.
inline std::optional<Certificate> certify_witness(const RealSystem& sys,
                                                  const Representation& rep) {
    if (int(rep.tuples.size()) != sys.n) return std::nullopt;
    if (auto c = certify_exact_rational(sys, exact_point_of(rep))) return c;
    return certify_krawczyk(sys, rep);
}

}  // namespace unknot
