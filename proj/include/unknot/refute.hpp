#pragma once
// delta-robust refutation: an interval branch-and-prune proof that the system
// has no solution with P = 0 and N >= delta.
//
// Search domain. Every solution can be gauge-normalized (P and N are
// conjugation invariant), so it suffices to cover the gauge slice. The cover
// branches on the first generator index m in {2..n} whose tuple differs from
// generator 1's: generators below m are aliased to generator 1 at compile
// time (their coordinates share generator 1's box slots), generator 1 lives
// on the circle a_1 in [-1,1], b_1 in [0,1] (c_1 = d_1 = 0), generator m has
// d_m = 0 and c_m in [0,1] (if its (c,d)-part is nonzero the gauge pins it
// there; if zero, the constraint holds trivially and the later pinned
// generator is covered by its full box), and all later generators range over
// [-1,1]^4. Unit norms keep every coordinate inside [-1,1].
//
// Pruning. A box B dies if the interval enclosure of P is strictly positive
// (member-wise: sum of squares of member enclosures) or the enclosure of N
// lies strictly below delta (distance members identically zero on the
// aliased subspace are dropped exactly, not evaluated). Otherwise the widest
// coordinate is bisected; boxes narrower than min_width stop the refutation
// (the verdict degrades to "unresolved", never to a wrong answer).
//
// Determinism. Boxes are processed in fixed-size chunks taken from the end
// of a deterministic work stack; worker threads only evaluate boxes of the
// current chunk, and results are merged in index order, so every statistic
// and the verdict are identical for any thread count. Budgets are checked
// between chunks.

#include <chrono>
#include <thread>
#include <vector>

#include "unknot/compiled.hpp"
#include "unknot/interval.hpp"
#include "unknot/system.hpp"

namespace unknot {

struct RefuteConfig {
    Rat delta = Rat(1, 10000);
    long long budget_boxes = 5'000'000;
    double min_width = 1e-3;
    int threads = 1;
    double budget_seconds = -1;  // <= 0: no wall-clock limit
};

struct RefuteOutcome {
    bool refuted = false;
    long long boxes_processed = 0;
    long long boxes_pruned = 0;
    long long boxes_stuck = 0;  // reached min_width without being pruned
    int max_depth = 0;
    bool budget_exhausted = false;
    bool timed_out = false;
};

namespace detail {

struct Branch {
    std::vector<CompiledPoly> members;  // equality members on the subspace
    std::vector<CompiledPoly> dist;     // distance members with generator >= m
    std::vector<Interval> init;         // initial box
};

inline int max_gen_of(const MultiPoly& p) {
    int g = 0;
    for (int id : p.variable_ids()) g = std::max(g, id / 4 + 1);
    return g;
}

inline Branch make_branch(const RealSystem& sys, int m) {
    Branch br;
    std::vector<int> slots(size_t(4 * sys.n), kZeroSlot);
    auto assign = [&](int gen, int comp, int slot) {
        slots[size_t(4 * (gen - 1) + comp)] = slot;
    };
    // generator 1 (and aliased generators 2..m-1): circle coordinates
    for (int g = 1; g < m; ++g) {
        assign(g, 0, 0);  // a
        assign(g, 1, 1);  // b
    }
    br.init.push_back(Interval(-1, 1));  // a_1
    br.init.push_back(Interval(0, 1));   // b_1 >= 0
    // generator m: d_m = 0, c_m >= 0
    assign(m, 0, 2);
    assign(m, 1, 3);
    assign(m, 2, 4);
    br.init.push_back(Interval(-1, 1));
    br.init.push_back(Interval(-1, 1));
    br.init.push_back(Interval(0, 1));
    // generators above m: full tuples
    int next = 5;
    for (int g = m + 1; g <= sys.n; ++g)
        for (int comp = 0; comp < 4; ++comp) {
            assign(g, comp, next);
            br.init.push_back(Interval(-1, 1));
            ++next;
        }
    for (const MultiPoly& q : sys.members) {
        CompiledPoly f = compile(q, slots);
        if (!f.is_zero()) br.members.push_back(std::move(f));
    }
    for (const MultiPoly& q : sys.distance_members)
        if (max_gen_of(q) >= m) br.dist.push_back(compile(q, slots));
    // Pin box dimensions no compiled polynomial references (they arise when
    // trace identification rewrites a_k to a_1): the enclosures are constant
    // along them, so a degenerate coordinate covers the whole range and the
    // widest-variable bisection never wastes splits on them.
    std::vector<bool> used(br.init.size(), false);
    auto mark = [&](const std::vector<CompiledPoly>& ps) {
        for (const CompiledPoly& f : ps)
            for (const CompiledPoly::Term& t : f.terms)
                for (int i = 0; i < t.len; ++i) used[t.slot[size_t(i)]] = true;
    };
    mark(br.members);
    mark(br.dist);
    for (size_t i = 0; i < br.init.size(); ++i)
        if (!used[i]) br.init[i] = Interval(0, 0);
    return br;
}

struct WorkBox {
    int branch = 0;  // index into the branch list (m - 2)
    int depth = 0;
    std::vector<Interval> x;
};

enum class BoxFate { PrunedP, PrunedN, Stuck, Split };

struct BoxResult {
    BoxFate fate;
    int widest = 0;
    double split_at = 0;
};

inline BoxResult judge_box(const Branch& br, const WorkBox& b,
                           const Interval& delta_enc, const Rat& delta,
                           double min_width) {
    // P lower bound: sum of squared member enclosures, accumulated outward;
    // the running lower endpoint only grows, so we can stop early.
    Interval acc(0.0);
    for (const CompiledPoly& f : br.members) {
        acc += f.eval(b.x).sqr();
        if (acc.lo > 0.0) return {BoxFate::PrunedP};
    }
    // N upper bound below delta? The exact rational comparison is only
    // needed inside the one-ulp enclosure window of delta.
    Interval nacc(0.0);
    for (const CompiledPoly& f : br.dist) nacc += f.eval(b.x).sqr();
    if (nacc.hi < delta_enc.lo ||
        (nacc.hi < delta_enc.hi && Rat(nacc.hi) < delta))
        return {BoxFate::PrunedN};

    int widest = 0;
    double w = -1;
    for (size_t i = 0; i < b.x.size(); ++i)
        if (b.x[i].width() > w) {
            w = b.x[i].width();
            widest = int(i);
        }
    if (w < min_width) return {BoxFate::Stuck};
    double mid = b.x[size_t(widest)].mid();
    if (!(b.x[size_t(widest)].lo < mid && mid < b.x[size_t(widest)].hi))
        return {BoxFate::Stuck};
    return {BoxFate::Split, widest, mid};
}

}  // namespace detail

inline RefuteOutcome refute(const RealSystem& sys, const RefuteConfig& cfg) {
    RefuteOutcome out;
    if (sys.n < 1) {
        out.refuted = true;  // no generators: N is identically zero
        return out;
    }
    if (sys.n == 1) {
        // single generator: N is the empty sum, identically zero < delta
        out.refuted = true;
        return out;
    }
    auto t0 = std::chrono::steady_clock::now();
    std::vector<detail::Branch> branches;
    std::vector<detail::WorkBox> stack;
    for (int m = 2; m <= sys.n; ++m) {
        branches.push_back(detail::make_branch(sys, m));
        stack.push_back({int(branches.size() - 1), 0, branches.back().init});
    }
    const Interval delta_enc = Interval::from_rat(cfg.delta);
    const int chunk_cap = 1024;  // fixed: chunking must not depend on threads
    const int threads = std::max(1, cfg.threads);

    std::vector<detail::BoxResult> results;
    while (!stack.empty()) {
        if (out.boxes_processed >= cfg.budget_boxes) {
            out.budget_exhausted = true;
            return out;
        }
        if (out.boxes_stuck > 0) return out;  // cannot refute any more
        if (cfg.budget_seconds > 0) {
            double elapsed =
                std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
            if (elapsed > cfg.budget_seconds) {
                out.timed_out = true;
                return out;
            }
        }
        const int take = int(std::min<size_t>(size_t(chunk_cap), stack.size()));
        const size_t base = stack.size() - size_t(take);
        results.assign(size_t(take), {});
        auto worker = [&](int t) {
            for (int i = t; i < take; i += threads) {
                const detail::WorkBox& b = stack[base + size_t(i)];
                results[size_t(i)] =
                    detail::judge_box(branches[size_t(b.branch)], b,
                                      delta_enc, cfg.delta, cfg.min_width);
            }
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        // Merge in index order: pop the chunk, push children deterministically.
        std::vector<detail::WorkBox> chunk(
            std::make_move_iterator(stack.begin() + long(base)),
            std::make_move_iterator(stack.end()));
        stack.resize(base);
        for (int i = 0; i < take; ++i) {
            const detail::BoxResult& r = results[size_t(i)];
            detail::WorkBox& b = chunk[size_t(i)];
            ++out.boxes_processed;
            out.max_depth = std::max(out.max_depth, b.depth);
            switch (r.fate) {
                case detail::BoxFate::PrunedP:
                case detail::BoxFate::PrunedN:
                    ++out.boxes_pruned;
                    break;
                case detail::BoxFate::Stuck:
                    ++out.boxes_stuck;
                    break;
                case detail::BoxFate::Split: {
                    detail::WorkBox lo = b, hi = std::move(b);
                    lo.x[size_t(r.widest)] =
                        Interval(lo.x[size_t(r.widest)].lo, r.split_at);
                    hi.x[size_t(r.widest)] =
                        Interval(r.split_at, hi.x[size_t(r.widest)].hi);
                    ++lo.depth;
                    ++hi.depth;
                    stack.push_back(std::move(lo));
                    stack.push_back(std::move(hi));
                    break;
                }
            }
        }
    }
    out.refuted = out.boxes_stuck == 0;
    return out;
}

}  // namespace unknot
