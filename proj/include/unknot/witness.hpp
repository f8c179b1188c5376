#pragma once
// Witness search: projected Gauss-Newton refinement over (S^3)^n with
// deterministic seeded and random restarts. A candidate is accepted only if
// the exact rational evaluation of the system at its (exactly representable)
// double coordinates satisfies P <= residual_tol and N >= delta; floating
// point only steers the iteration, never the verdict.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "unknot/compiled.hpp"
#include "unknot/representation.hpp"
#include "unknot/rng.hpp"
#include "unknot/system.hpp"

namespace unknot {

inline Rat rat_pow10_inv(unsigned k) {
    Int d = 1;
    for (unsigned i = 0; i < k; ++i) d *= 10;
    return Rat(1, d);
}

// Exact rational coordinates of a double vector (every finite double is a
// dyadic rational, so this conversion is lossless).
inline std::vector<Rat> exact_point(const std::vector<double>& x) {
    std::vector<Rat> pt;
    pt.reserve(x.size());
    for (double v : x) pt.emplace_back(v);
    return pt;
}

struct SearchConfig {
    Rat delta = Rat(1, 10000);
    Rat residual_tol = rat_pow10_inv(20);
    int restarts = 64;
    int max_iterations = 60;
    std::uint64_t seed = 0;
};

struct SearchReport {
    std::optional<Representation> witness;  // gauge-normalized when present
    int seeds_tried = 0;
    int restarts_used = 0;
    double best_p = std::numeric_limits<double>::infinity();
};

namespace detail {

struct GnSystem {
    int dim = 0;
    std::vector<CompiledPoly> f;
    // per member: (slot, compiled partial derivative)
    std::vector<std::vector<std::pair<int, CompiledPoly>>> grad;
};

inline GnSystem compile_gn(const RealSystem& sys) {
    GnSystem g;
    g.dim = 4 * sys.n;
    auto slots = identity_slots(sys.n);
    for (const auto& q : sys.members) {
        g.f.push_back(compile(q, slots));
        std::vector<std::pair<int, CompiledPoly>> gr;
        for (int id : q.variable_ids()) {
            MultiPoly d = q.derivative(Var::from_id(id));
            if (!d.is_zero()) gr.emplace_back(id, compile(d, slots));
        }
        g.grad.push_back(std::move(gr));
    }
    return g;
}

inline double sum_sq(const GnSystem& g, const std::vector<double>& x) {
    double p = 0;
    for (const auto& f : g.f) {
        double v = f.eval(x);
        p += v * v;
    }
    return p;
}

// Gauss-Newton with a least-norm SVD step and re-projection of every
// 4-tuple onto the unit sphere after each update.
inline Representation refine(const GnSystem& g, Representation r,
                             int max_iter) {
    const int m = int(g.f.size());
    Eigen::VectorXd F(m);
    Eigen::MatrixXd J(m, g.dim);
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> x = r.flatten();
        J.setZero();
        double p = 0;
        for (int i = 0; i < m; ++i) {
            F(i) = g.f[size_t(i)].eval(x);
            p += F(i) * F(i);
            for (const auto& [slot, dp] : g.grad[size_t(i)])
                J(i, slot) = dp.eval(x);
        }
        if (!std::isfinite(p) || p < 1e-34) break;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(
            J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-8);
        Eigen::VectorXd step = svd.solve(-F);
        for (int i = 0; i < g.dim; ++i) x[size_t(i)] += step(i);
        r = Representation::from_flat(x);
        for (Quat& q : r.tuples) {
            double nn = qnorm(q);
            q = nn < 1e-8 ? Quat{1, 0, 0, 0} : qscale(q, 1.0 / nn);
        }
    }
    return r;
}

}  // namespace detail

// Exact accept test: P <= residual_tol and N >= delta at the rational point
// given by the representation's double coordinates.
inline bool witness_acceptable(const RealSystem& sys, const Representation& r,
                               const SearchConfig& cfg,
                               Rat* p_out = nullptr, Rat* n_out = nullptr) {
    std::vector<Rat> pt = exact_point(r.flatten());
    Rat p = evaluate(sys.P, pt);
    Rat nv = evaluate(sys.N, pt);
    if (p_out) *p_out = p;
    if (n_out) *n_out = nv;
    return p <= cfg.residual_tol && nv >= cfg.delta;
}

// Tries the provided seeds first, then deterministic random restarts.
// Every candidate is refined, gauge-normalized and exactly checked.
inline SearchReport search_witness(const RealSystem& sys,
                                   const std::vector<Representation>& seeds,
                                   const SearchConfig& cfg = {}) {
    SearchReport rep;
    detail::GnSystem g = detail::compile_gn(sys);

    auto attempt = [&](const Representation& start) -> bool {
        Representation cand = detail::refine(g, start, cfg.max_iterations);
        cand = gauge_normalize(cand);
        double p = detail::sum_sq(g, cand.flatten());
        if (p < rep.best_p) rep.best_p = p;
        if (witness_acceptable(sys, cand, cfg)) {
            rep.witness = cand;
            return true;
        }
        return false;
    };

    for (const Representation& s : seeds) {
        ++rep.seeds_tried;
        if (int(s.tuples.size()) != sys.n) continue;
        if (attempt(s)) return rep;
    }
    DetRng rng(cfg.seed);
    for (int t = 0; t < cfg.restarts; ++t) {
        ++rep.restarts_used;
        if (attempt(rng.random_rep(sys.n))) return rep;
    }
    return rep;
}

}  // namespace unknot
