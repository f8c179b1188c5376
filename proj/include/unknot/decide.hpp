#pragma once
// Top-level decision procedure. A diagram with n crossings is KNOTTED when
// its relation system admits a certified non-commutative SU(2) solution, and
// UNKNOT (at robustness level delta) when interval branch-and-prune proves
// that no solution has generator spread N >= delta.
//
// Pipeline, run in a fixed deterministic order:
//   1. n = 0 short-circuits to UNKNOT (there is nothing to represent).
//   2. Fox p-coloring oracle over a fixed prime list. Any nontrivial coloring
//      lifts to an exactly-certifiable binary-dihedral solution -> KNOTTED.
//   3. Numerical witness search (oracle lifts as seeds, then deterministic
//      random restarts), followed by exact or interval certification of the
//      candidate -> KNOTTED only if certification succeeds.
//   4. delta-robust refutation by branch-and-prune -> UNKNOT on success.
//   5. Anything else degrades honestly to UNRESOLVED with a budget report.
//
// Verdicts are deterministic for a fixed (input, config, seed) triple and
// invariant under the thread count; wall-clock time is therefore never part
// of the serialized verdict (callers may report it on a side channel).
// The optional shared-trace mode identifies all trace coordinates a_k := a_1
// before refutation only: every exact solution of the relation rows has
// conjugate generator images, which in SU(2) forces equal traces, so the
// identified system has the same exact solutions with N >= delta. Witness
// search and certification always run on the full system, because a
// certificate must bound residuals of the honest, unidentified members.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unknot/certify.hpp"
#include "unknot/coloring.hpp"
#include "unknot/diagram.hpp"
#include "unknot/refute.hpp"
#include "unknot/representation.hpp"
#include "unknot/system.hpp"
#include "unknot/wirtinger.hpp"
#include "unknot/witness.hpp"

namespace unknot {

enum class VerdictKind { Unknot, Knotted, Unresolved };

inline const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Unknot:
            return "UNKNOT";
        case VerdictKind::Knotted:
            return "KNOTTED";
        default:
            return "UNRESOLVED";
    }
}

struct DecideConfig {
    Rat delta = Rat(1, 10000);
    long long budget_boxes = 5'000'000;
    int restarts = 64;
    double budget_seconds = -1;  // < 0 means unlimited; == 0 forbids all work
    int threads = 1;
    std::uint64_t seed = 0;
    bool shared_trace = false;
    std::vector<int> oracle_primes = {3, 5, 7, 11, 13};
    double min_width = 1e-3;
};

struct DecideStats {
    std::vector<int> colorable_primes;  // primes from the list with a
                                        // nontrivial coloring
    bool search_ran = false;
    int seeds_tried = 0;
    int restarts_used = 0;
    bool refute_ran = false;
    RefuteOutcome refute;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Unresolved;
    // Feasibility of {P = 0, N != 0}: true = solvable (knotted), false =
    // refuted at level delta (unknot). Unknown while UNRESOLVED.
    std::optional<bool> feasible;
    Rat delta;
    int n = 0;
    std::optional<Representation> witness;      // certified, gauge-normalized
    std::optional<Certificate> certificate;     // present iff witness is
    std::optional<Representation> failed_candidate;  // kept for diagnostics,
                                                     // never serialized
    DecideStats stats;
    DecideConfig config;
    std::string note;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema"] = "unknot-verdict/1";
        j["verdict"] = verdict_name(kind);
        if (feasible)
            j["feasible"] = *feasible;
        else
            j["feasible"] = nullptr;
        j["delta"] = delta.str();
        j["n"] = n;
        j["note"] = note;
        if (witness) {
            std::vector<std::string> coords;
            for (double x : witness->flatten()) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", x);
                coords.emplace_back(buf);
            }
            j["witness"] = coords;
        }
        if (certificate) j["certificate"] = certificate->to_json();
        if (kind == VerdictKind::Unknot)
            j["boxes_refuted"] = stats.refute.boxes_pruned;
        nlohmann::json js;
        js["colorable_primes"] = stats.colorable_primes;
        js["search"] = {{"ran", stats.search_ran},
                        {"seeds_tried", stats.seeds_tried},
                        {"restarts_used", stats.restarts_used}};
        js["refute"] = {{"ran", stats.refute_ran},
                        {"refuted", stats.refute.refuted},
                        {"boxes_processed", stats.refute.boxes_processed},
                        {"boxes_pruned", stats.refute.boxes_pruned},
                        {"boxes_stuck", stats.refute.boxes_stuck},
                        {"max_depth", stats.refute.max_depth},
                        {"budget_exhausted", stats.refute.budget_exhausted},
                        {"timed_out", stats.refute.timed_out}};
        j["stats"] = js;
        j["config"] = {{"delta", config.delta.str()},
                       {"budget_boxes", config.budget_boxes},
                       {"restarts", config.restarts},
                       {"budget_seconds", config.budget_seconds},
                       {"threads", config.threads},
                       {"seed", config.seed},
                       {"shared_trace", config.shared_trace},
                       {"oracle_primes", config.oracle_primes},
                       {"min_width", config.min_width}};
        return j;
    }
};

inline Verdict decide(const KnotDiagram& d, const DecideConfig& cfg = {}) {
    if (cfg.delta <= 0)
        throw std::invalid_argument("decide: delta must be positive");
    if (cfg.budget_boxes < 0 || cfg.restarts < 0)
        throw std::invalid_argument("decide: budgets must be non-negative");
    if (cfg.threads < 1)
        throw std::invalid_argument("decide: thread count must be >= 1");

    Verdict v;
    v.delta = cfg.delta;
    v.config = cfg;
    v.n = d.n;

    if (d.n == 0) {
        v.kind = VerdictKind::Unknot;
        v.feasible = false;
        v.note =
            "0-crossing diagram: no generators, N is identically zero, "
            "nothing to refute";
        return v;
    }
    if (cfg.budget_boxes == 0 || cfg.restarts == 0 ||
        cfg.budget_seconds == 0.0) {
        v.kind = VerdictKind::Unresolved;
        v.note = "no work permitted: a budget is zero";
        return v;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const WirtingerPresentation pres = build_presentation(d);
    const RealSystem sys = build_system(pres);

    // Stage 1: coloring oracle. Certification is exact, so the first
    // colorable prime settles the verdict; the full list is still scanned
    // for the stats block (cheap mod-p linear algebra).
    std::vector<Coloring> colorings;
    for (int p : cfg.oracle_primes)
        if (std::optional<Coloring> col = find_nontrivial_coloring(pres, p)) {
            v.stats.colorable_primes.push_back(p);
            colorings.push_back(*col);
        }
    for (const Coloring& col : colorings)
        if (std::optional<Certificate> cert = certify_coloring(pres, sys, col)) {
            v.kind = VerdictKind::Knotted;
            v.feasible = true;
            v.witness = coloring_to_rep(col);
            v.certificate = std::move(cert);
            v.note = "nontrivial Fox " + std::to_string(col.p) +
                     "-coloring lifted to an exactly certified solution";
            return v;
        }

    // Stage 2: numerical witness search with exact/interval certification.
    std::vector<Representation> seeds;
    seeds.reserve(colorings.size());
    for (const Coloring& col : colorings) seeds.push_back(coloring_to_rep(col));
    SearchConfig scfg;
    scfg.delta = cfg.delta;
    scfg.restarts = cfg.restarts;
    scfg.seed = cfg.seed;
    SearchReport found = search_witness(sys, seeds, scfg);
    v.stats.search_ran = true;
    v.stats.seeds_tried = found.seeds_tried;
    v.stats.restarts_used = found.restarts_used;
    if (found.witness) {
        if (std::optional<Certificate> cert =
                certify_witness(sys, *found.witness)) {
            v.kind = VerdictKind::Knotted;
            v.feasible = true;
            v.witness = std::move(found.witness);
            v.certificate = std::move(cert);
            v.note = "search produced a witness certified by method " +
                     v.certificate->method;
            return v;
        }
        v.failed_candidate = std::move(found.witness);
    }

    // Stage 3: delta-robust refutation.
    RefuteConfig rcfg;
    rcfg.delta = cfg.delta;
    rcfg.budget_boxes = cfg.budget_boxes;
    rcfg.min_width = cfg.min_width;
    rcfg.threads = cfg.threads;
    if (cfg.budget_seconds > 0) {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        const double remaining = cfg.budget_seconds - elapsed;
        if (remaining <= 0) {
            v.kind = VerdictKind::Unresolved;
            v.stats.refute.timed_out = true;
            v.note = "time budget exhausted before refutation could start";
            return v;
        }
        rcfg.budget_seconds = remaining;
    }
    RefuteOutcome out =
        cfg.shared_trace ? refute(build_system(pres, true), rcfg)
                         : refute(sys, rcfg);
    v.stats.refute_ran = true;
    v.stats.refute = out;
    if (out.refuted) {
        v.kind = VerdictKind::Unknot;
        v.feasible = false;
        v.note = "no solution with N >= delta: interval cover of the gauge "
                 "slice is exhausted";
        if (v.failed_candidate)
            v.note += "; the uncertified search candidate was spurious";
        return v;
    }
    v.kind = VerdictKind::Unresolved;
    if (out.timed_out)
        v.note = "refutation timed out";
    else if (out.budget_exhausted)
        v.note = "refutation box budget exhausted";
    else
        v.note = "refutation stuck at minimum box width (delta may be "
                 "unreachably small)";
    if (v.failed_candidate)
        v.note += "; a search candidate failed certification";
    return v;
}

inline Verdict decide_pd(const std::string& pd_text,
                         const DecideConfig& cfg = {}) {
    return decide(parse_pd(pd_text), cfg);
}

}  // namespace unknot
