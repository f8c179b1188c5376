// Acceptance gate: one line per criterion, "criterion N: PASS/FAIL — detail",
// nonzero exit when any criterion fails. Each criterion is checked against
// values derived from independent oracles (exact rational/quadratic
// evaluation, brute-force coloring enumeration, closed-form lift geometry),
// never against numbers this library itself produced earlier.
//
// Optional argv[1]: path to the CLI binary, used to double-check the
// serialization determinism criterion end to end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "unknot/certify.hpp"
#include "unknot/coloring.hpp"
#include "unknot/decide.hpp"
#include "unknot/fixtures.hpp"
#include "unknot/representation.hpp"
#include "unknot/rng.hpp"
#include "unknot/system.hpp"
#include "unknot/witness.hpp"

using namespace unknot;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

struct Gate {
    bool all_pass = true;
    void report(int id, bool pass, const std::string& detail) {
        std::printf("criterion %d: %s — %s\n", id, pass ? "PASS" : "FAIL",
                    detail.c_str());
        std::fflush(stdout);
        if (!pass) all_pass = false;
    }
    void run(int id, const std::function<std::pair<bool, std::string>()>& f) {
        try {
            auto [pass, detail] = f();
            report(id, pass, detail);
        } catch (const std::exception& e) {
            report(id, false, std::string("exception: ") + e.what());
        }
    }
};

WirtingerPresentation pres_of(const std::string& name) {
    return build_presentation(parse_pd(fixtures::pd(name)));
}
RealSystem system_of(const std::string& name) {
    return build_system(pres_of(name));
}
std::vector<Rat> rat_point(const std::vector<double>& x) {
    std::vector<Rat> r;
    r.reserve(x.size());
    for (double v : x) r.emplace_back(v);
    return r;
}

// Independent coloring oracle: enumerate all p^n color assignments and count
// those satisfying every crossing congruence 2*c_j = c_k + c_{k+1} (mod p).
long long brute_force_colorings(const WirtingerPresentation& pres, int p) {
    long long total = 1;
    for (int i = 0; i < pres.n; ++i) total *= p;
    long long count = 0;
    std::vector<int> colors(size_t(pres.n));
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < pres.n; ++i) {
            colors[size_t(i)] = int(c % p);
            c /= p;
        }
        bool ok = true;
        for (const Relation& rel : pres.relations) {
            int lhs = (2 * colors[size_t(rel.j - 1)]) % p;
            int rhs =
                (colors[size_t(rel.k - 1)] + colors[size_t(rel.k % pres.n)]) %
                p;
            if (lhs != rhs) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

const std::vector<std::string> kSystems = {
    "unknot_1",       "unknot_2", "messy_unknot_4",
    "trefoil",        "trefoil_kinked", "figure_eight",
    "knot_5_1",       "knot_5_2", "knot_6_1"};

// Diagrams whose relations involve a generator conjugating itself or its
// successor (single-arc twists): there the two relation monomial families
// overlap and merge into coefficient-2 terms before squaring.
const std::set<std::string> kSelfConjugating = {"unknot_2", "messy_unknot_4",
                                                "trefoil_kinked"};

std::string set_text(const std::set<Int>& xs) {
    std::string s = "{";
    for (auto it = xs.begin(); it != xs.end(); ++it) {
        if (it != xs.begin()) s += ",";
        s += it->str();
    }
    return s + "}";
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    Gate gate;

    // 1. Structural shape of the built system on every fixture.
    gate.run(1, []() -> std::pair<bool, std::string> {
        bool ok = true;
        std::string bad;
        double worst = 0;
        for (const std::string& name : kSystems) {
            Timer t;
            RealSystem sys = system_of(name);
            CoefficientStats st = coefficient_stats(sys);
            const std::set<Int> expect_pre = kSelfConjugating.count(name)
                                                 ? std::set<Int>{-1, 1, 2}
                                                 : std::set<Int>{-1, 1};
            bool here = st.variable_count == 4 * sys.n &&
                        sys.P.degree() == 4 &&
                        (sys.n >= 2 ? sys.N.degree() == 2 : sys.N.is_zero()) &&
                        st.pre_squaring_set == expect_pre;
            worst = std::max(worst, t.seconds());
            if (t.seconds() >= 1.0) here = false;
            if (!here) {
                ok = false;
                bad += " " + name + " pre_squaring=" +
                       set_text(st.pre_squaring_set);
            }
        }
        if (!ok) return {false, "structure mismatch:" + bad};
        return {true,
                "9 diagrams: 4n variables, one equality P (degree 4) and one "
                "inequality N (degree 2; identically 0 when n=1); "
                "pre-squaring coefficients {-1,1}, or {-1,1,2} on the three "
                "single-arc-twist diagrams where relation monomials merge; "
                "slowest build " +
                    fmt(worst) + "s < 1s"};
    });

    // 2. The trivial representation solves P = 0 and N = 0 exactly.
    gate.run(2, []() -> std::pair<bool, std::string> {
        for (const std::string& name : kSystems) {
            RealSystem sys = system_of(name);
            std::vector<Rat> x(size_t(4 * sys.n), Rat(0));
            for (int k = 0; k < sys.n; ++k) x[size_t(4 * k)] = Rat(1);
            if (evaluate(sys.P, x) != 0 || evaluate(sys.N, x) != 0)
                return {false, name + ": trivial point not a zero"};
        }
        return {true,
                "all generators at (1,0,0,0): P = 0 and N = 0 under exact "
                "rational evaluation on all 9 diagrams"};
    });

    // 3. Trefoil: KNOTTED with an exactly certified oracle-seeded witness.
    gate.run(3, []() -> std::pair<bool, std::string> {
        Timer t;
        Verdict v = decide_pd(fixtures::pd("trefoil"));
        const double wall = t.seconds();
        if (v.kind != VerdictKind::Knotted || !v.certificate)
            return {false, "trefoil verdict was not a certified KNOTTED"};
        if (v.certificate->residual_bound != 0)
            return {false, "certificate residual bound is not exactly 0"};
        WirtingerPresentation pres = pres_of("trefoil");
        RealSystem sys = build_system(pres);
        auto col = find_nontrivial_coloring(pres, 3);
        if (!col) return {false, "no nontrivial 3-coloring found"};
        std::vector<QuadExt> lift = coloring_to_rep_exact(*col);
        QuadExt pv = evaluate(sys.P, lift);
        QuadExt nv = evaluate(sys.N, lift);
        if (!pv.is_zero())
            return {false, "lift does not satisfy P = 0 in Q[sqrt(3)]"};
        if (!(nv == QuadExt(6)))
            return {false, "exact N of the lift is not the derived value 6"};
        if (wall >= 10) return {false, "took " + fmt(wall) + "s >= 10s"};
        return {true,
                "KNOTTED, certificate method " + v.certificate->method +
                    " with residual bound exactly 0; seeded witness solves "
                    "P = 0 exactly in Q[sqrt(3)] and has exact N = 6 (both "
                    "lift differences have squared norm 3; the figure 9/2 is "
                    "not attained by this witness), wall " +
                    fmt(wall) + "s < 10s"};
    });

    // 4. Figure-eight: KNOTTED via the 5-coloring, count checked brute-force.
    gate.run(4, []() -> std::pair<bool, std::string> {
        Timer t;
        Verdict v = decide_pd(fixtures::pd("figure_eight"));
        if (v.kind != VerdictKind::Knotted || !v.certificate ||
            v.certificate->p != 5)
            return {false, "figure-eight did not certify through p = 5"};
        WirtingerPresentation pres = pres_of("figure_eight");
        long long brute = brute_force_colorings(pres, 5);
        Int linalg = count_colorings(pres, 5);
        if (brute != 25 || linalg != 25)
            return {false, "coloring count mismatch: brute=" +
                               std::to_string(brute) + " rank=" +
                               linalg.str()};
        const double wall = t.seconds();
        if (wall >= 30) return {false, "took " + fmt(wall) + "s >= 30s"};
        return {true,
                "KNOTTED via nontrivial 5-coloring; 25 colorings confirmed "
                "by brute force over all 5^4 assignments and by mod-5 rank, "
                "wall " +
                    fmt(wall) + "s < 30s"};
    });

    // 5. Unknot diagrams: UNKNOT at delta = 1/100; the messy 4-crossing
    //    diagram must never come back KNOTTED.
    gate.run(5, []() -> std::pair<bool, std::string> {
        DecideConfig cfg;
        cfg.delta = Rat(1, 100);
        std::string times;
        for (const char* name : {"unknot_0", "unknot_1", "unknot_2"}) {
            Timer t;
            Verdict v = decide_pd(fixtures::pd(name), cfg);
            const double wall = t.seconds();
            if (v.kind != VerdictKind::Unknot)
                return {false, std::string(name) + " was not UNKNOT"};
            if (wall >= 60)
                return {false,
                        std::string(name) + " took " + fmt(wall) + "s >= 60s"};
            times += std::string(" ") + name + "=" + fmt(wall) + "s";
        }
        Timer t_messy;
        Verdict messy = decide_pd(fixtures::pd("messy_unknot_4"), cfg);
        if (messy.kind == VerdictKind::Knotted)
            return {false, "messy_unknot_4 returned KNOTTED"};
        DecideConfig shared = cfg;
        shared.shared_trace = true;
        shared.budget_boxes = 20'000'000;
        Verdict messy2 = decide_pd(fixtures::pd("messy_unknot_4"), shared);
        if (messy2.kind == VerdictKind::Knotted)
            return {false, "messy_unknot_4 returned KNOTTED (shared trace)"};
        return {true,
                "UNKNOT at delta 1/100 within 60s each:" + times +
                    "; messy_unknot_4 " +
                    std::string(verdict_name(messy.kind)) +
                    " under the default box budget and " +
                    verdict_name(messy2.kind) +
                    " with traces identified (never KNOTTED), " +
                    fmt(t_messy.seconds()) + "s total"};
    });

    // 6. Five- and six-crossing knots: colorable at a listed prime, decided
    //    KNOTTED; coloring counts match brute force for n <= 5, p <= 5.
    gate.run(6, []() -> std::pair<bool, std::string> {
        std::string detail;
        for (const char* name : {"knot_5_1", "knot_5_2", "knot_6_1"}) {
            WirtingerPresentation pres = pres_of(name);
            int found = 0;
            for (int p : {3, 5, 7, 11, 13})
                if (is_colorable(pres, p)) {
                    found = p;
                    break;
                }
            if (!found)
                return {false,
                        std::string(name) + " not colorable at any listed p"};
            Verdict v = decide_pd(fixtures::pd(name));
            if (v.kind == VerdictKind::Unknot)
                return {false, std::string(name) + " returned UNKNOT"};
            if (v.kind != VerdictKind::Knotted)
                return {false, std::string(name) + " was not KNOTTED"};
            detail += std::string(" ") + name + ":p=" + std::to_string(found);
        }
        for (const std::string& name : kSystems) {
            WirtingerPresentation pres = pres_of(name);
            if (pres.n > 5) continue;
            for (int p : {3, 5})
                if (brute_force_colorings(pres, p) !=
                    count_colorings(pres, p))
                    return {false, name + ": coloring count disagrees with "
                                       "brute force at p=" +
                                       std::to_string(p)};
        }
        return {true,
                "each knot is colorable and KNOTTED:" + detail +
                    "; all mod-p coloring counts for n <= 5, p in {3,5} "
                    "match brute-force enumeration"};
    });

    // 7. Pointwise properties of P and N on random and exact points.
    gate.run(7, []() -> std::pair<bool, std::string> {
        for (const char* name : {"trefoil", "figure_eight"}) {
            RealSystem sys = system_of(name);
            DetRng rng(99);
            // 10^4 random float points: P >= 0, N >= 0 within 1e-12.
            for (int i = 0; i < 10000; ++i) {
                std::vector<double> x(size_t(4 * sys.n));
                for (double& v : x) v = rng.uniform_pm();
                if (evaluate(sys.P, x) < -1e-12 ||
                    evaluate(sys.N, x) < -1e-12)
                    return {false,
                            std::string(name) + ": sum of squares went "
                                                "negative at a random point"};
            }
            // Exact rational spot checks of the same inequalities.
            for (int i = 0; i < 300; ++i) {
                std::vector<double> x(size_t(4 * sys.n));
                for (double& v : x) v = rng.uniform_pm();
                std::vector<Rat> xr = rat_point(x);
                if (evaluate(sys.P, xr) < 0 || evaluate(sys.N, xr) < 0)
                    return {false, std::string(name) +
                                       ": exact negativity at a random point"};
            }
            // P = 0 <=> every member vanishes; N = 0 <=> all tuples equal.
            // Zero side: exact rational unit quaternions repeated n times.
            const std::vector<std::vector<Rat>> units = {
                {Rat(1), Rat(0), Rat(0), Rat(0)},
                {Rat(3, 5), Rat(4, 5), Rat(0), Rat(0)},
                {Rat(1, 3), Rat(2, 3), Rat(-2, 3), Rat(0)},
                {Rat(1, 2), Rat(-1, 2), Rat(1, 2), Rat(1, 2)},
                {Rat(2, 7), Rat(3, 7), Rat(-6, 7), Rat(0)}};
            for (const auto& q : units) {
                std::vector<Rat> x;
                for (int k = 0; k < sys.n; ++k)
                    x.insert(x.end(), q.begin(), q.end());
                if (evaluate(sys.P, x) != 0 || evaluate(sys.N, x) != 0)
                    return {false, std::string(name) +
                                       ": constant tuple is not a zero"};
                for (const MultiPoly& m : sys.members)
                    if (evaluate(m, x) != 0)
                        return {false, std::string(name) +
                                           ": P = 0 with a nonzero member"};
                // Unequal tuples: flip one generator's sign on b.
                std::vector<Rat> y = x;
                y[5] = -y[5] + Rat(1, 7);
                if (evaluate(sys.N, y) == 0)
                    return {false, std::string(name) +
                                       ": N = 0 despite unequal tuples"};
            }
            // Nonzero side at random rational points: P > 0 forces some
            // member nonzero (contrapositive of the equivalence).
            for (int i = 0; i < 300; ++i) {
                std::vector<double> x(size_t(4 * sys.n));
                for (double& v : x) v = rng.uniform_pm();
                std::vector<Rat> xr = rat_point(x);
                if (evaluate(sys.P, xr) > 0) {
                    bool some = false;
                    for (const MultiPoly& m : sys.members)
                        if (evaluate(m, xr) != 0) {
                            some = true;
                            break;
                        }
                    if (!some)
                        return {false, std::string(name) +
                                           ": P > 0 with all members zero"};
                }
            }
        }
        RealSystem tre = system_of("trefoil");
        std::vector<Rat> tet = {Rat(1, 2), Rat(1, 2),  Rat(1, 2),  Rat(1, 2),
                                Rat(1, 2), Rat(1, 2),  Rat(-1, 2), Rat(-1, 2),
                                Rat(1, 2), Rat(-1, 2), Rat(-1, 2), Rat(1, 2)};
        for (const MultiPoly& m : tre.members)
            if (evaluate(m, tet) != 0)
                return {false, "exact non-commutative zero has a nonzero "
                               "member"};
        if (evaluate(tre.N, tet) != 4)
            return {false, "exact non-commutative zero has wrong N"};
        return {true,
                "10^4 random points per diagram: P >= 0 and N >= 0 (float "
                "tolerance 1e-12, plus exact rational subsamples); P = 0 "
                "iff every member vanishes and N = 0 iff all generator "
                "tuples coincide, on exact rational zeros (including a "
                "non-commutative one with N = 4) and random nonzeros"};
    });

    // 8. Gauge canonicality under random conjugation.
    gate.run(8, []() -> std::pair<bool, std::string> {
        DetRng rng(2024);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            Representation r = rng.random_rep(3 + i % 3);
            Quat u = rng.unit_quat();
            std::vector<double> a = gauge_normalize(r).flatten();
            std::vector<double> b =
                gauge_normalize(conjugate(r, u)).flatten();
            for (size_t j = 0; j < a.size(); ++j)
                worst = std::max(worst, std::fabs(a[j] - b[j]));
        }
        if (worst > 1e-9)
            return {false, "normal forms diverged by " + std::to_string(worst)};
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2e", worst);
        return {true,
                std::string("100 random conjugations: normal forms agree "
                            "coordinate-wise within ") +
                    buf + " <= 1e-9"};
    });

    // 9. Determinism of serialized verdicts; thread-count invariance.
    gate.run(9, [&cli]() -> std::pair<bool, std::string> {
        DecideConfig cfg;
        cfg.delta = Rat(1, 100);
        cfg.seed = 7;
        for (const char* name : {"trefoil", "unknot_2"}) {
            std::string a =
                decide_pd(fixtures::pd(name), cfg).to_json().dump(2);
            std::string b =
                decide_pd(fixtures::pd(name), cfg).to_json().dump(2);
            if (a != b)
                return {false,
                        std::string(name) + ": repeated runs differ"};
        }
        for (const char* name : {"unknot_2", "trefoil"}) {
            std::vector<nlohmann::json> runs;
            for (int t : {1, 2, 8}) {
                DecideConfig c = cfg;
                c.threads = t;
                nlohmann::json j =
                    decide_pd(fixtures::pd(name), c).to_json();
                j.erase("config");
                runs.push_back(std::move(j));
            }
            if (runs[0] != runs[1] || runs[0] != runs[2])
                return {false, std::string(name) +
                                   ": verdict changed with thread count"};
        }
        std::string cli_note = "; CLI byte-identity not re-checked here";
        if (!cli.empty()) {
            auto capture = [&](const std::string& cmd) {
                std::string out;
                FILE* pipe = popen(cmd.c_str(), "r");
                if (!pipe) return out;
                char buf[4096];
                while (size_t got = fread(buf, 1, sizeof buf, pipe))
                    out.append(buf, got);
                pclose(pipe);
                return out;
            };
            const std::string cmd = "'" + cli + "' decide '" +
                                    fixtures::pd("unknot_2") +
                                    "' --delta 1/100 --seed 7 --format json "
                                    "2>/dev/null";
            std::string a = capture(cmd), b = capture(cmd);
            if (a.empty() || a != b)
                return {false, "CLI JSON outputs differ between runs"};
            cli_note = "; CLI stdout byte-identical across runs";
        }
        return {true,
                "library verdict JSON byte-identical across repeated runs "
                "(trefoil, unknot_2); verdicts unchanged for 1, 2, 8 "
                "threads" +
                    cli_note};
    });

    // 10. Reidemeister-I padding: the kinked trefoil stays KNOTTED.
    gate.run(10, []() -> std::pair<bool, std::string> {
        Verdict v = decide_pd(fixtures::pd("trefoil_kinked"));
        if (v.kind != VerdictKind::Knotted || !v.certificate)
            return {false, "kinked trefoil not certified KNOTTED"};
        return {true,
                "trefoil with an extra twist (n = 4) is KNOTTED, method " +
                    v.certificate->method + ", residual bound " +
                    v.certificate->residual_bound.str()};
    });

    return gate.all_pass ? 0 : 1;
}
