// End-to-end decision procedure: verdict polarity, certificate presence,
// serialization determinism, thread invariance, and budget handling.

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <string>
#include <vector>

#include "unknot/decide.hpp"
#include "unknot/fixtures.hpp"

using namespace unknot;

namespace {
DecideConfig quick(long long boxes = 5'000'000) {
    DecideConfig cfg;
    cfg.delta = Rat(1, 100);
    cfg.budget_boxes = boxes;
    return cfg;
}
Verdict decide_fixture(const std::string& name, const DecideConfig& cfg) {
    return decide_pd(fixtures::pd(name), cfg);
}
}  // namespace

TEST_CASE("empty diagram is UNKNOT without any work") {
    Verdict v = decide_pd("PD[]", quick());
    CHECK(v.kind == VerdictKind::Unknot);
    REQUIRE(v.feasible.has_value());
    CHECK_FALSE(*v.feasible);
    CHECK(v.n == 0);
    CHECK_FALSE(v.stats.search_ran);
    CHECK_FALSE(v.stats.refute_ran);
}

TEST_CASE("trefoil is KNOTTED via the 3-coloring oracle") {
    Verdict v = decide_fixture("trefoil", quick());
    CHECK(v.kind == VerdictKind::Knotted);
    REQUIRE(v.feasible.has_value());
    CHECK(*v.feasible);
    CHECK(v.stats.colorable_primes == std::vector<int>{3});
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->method == "exact-coloring+quadratic");
    CHECK(v.certificate->residual_bound == 0);
    REQUIRE(v.witness.has_value());
    CHECK_FALSE(v.stats.search_ran);  // oracle settled it first
}

TEST_CASE("figure-eight is KNOTTED via the 5-coloring oracle") {
    Verdict v = decide_fixture("figure_eight", quick());
    CHECK(v.kind == VerdictKind::Knotted);
    CHECK(v.stats.colorable_primes == std::vector<int>{5});
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->method == "exact-coloring");
}

TEST_CASE("serialized KNOTTED witness re-certifies from the JSON verdict") {
    Verdict v = decide_fixture("trefoil", quick());
    REQUIRE(v.kind == VerdictKind::Knotted);
    nlohmann::json j = v.to_json();
    REQUIRE(j.contains("witness"));
    std::vector<double> flat;
    for (const auto& s : j["witness"])
        flat.push_back(std::strtod(s.get<std::string>().c_str(), nullptr));
    Representation rt = Representation::from_flat(flat);
    RealSystem sys =
        build_system(build_presentation(parse_pd(fixtures::pd("trefoil"))));
    std::optional<Certificate> again = certify_witness(sys, rt);
    REQUIRE(again.has_value());
    CHECK(again->n_lower > 0);
}

TEST_CASE("one- and two-crossing unknots are UNKNOT at delta = 1/100") {
    Verdict v1 = decide_fixture("unknot_1", quick());
    CHECK(v1.kind == VerdictKind::Unknot);
    CHECK(v1.stats.refute.boxes_processed == 0);  // N is identically zero
    CHECK(v1.stats.restarts_used == v1.config.restarts);  // search found nothing

    Verdict v2 = decide_fixture("unknot_2", quick());
    CHECK(v2.kind == VerdictKind::Unknot);
    REQUIRE(v2.feasible.has_value());
    CHECK_FALSE(*v2.feasible);
    CHECK(v2.stats.refute.boxes_pruned > 0);
    CHECK(v2.to_json()["boxes_refuted"].get<long long>() ==
          v2.stats.refute.boxes_pruned);
}

TEST_CASE("messy four-crossing unknot never returns KNOTTED") {
    DecideConfig cfg = quick(30000);  // modest budget: UNKNOT or UNRESOLVED
    Verdict v = decide_fixture("messy_unknot_4", cfg);
    CHECK(v.kind != VerdictKind::Knotted);
}

TEST_CASE("trefoil with an extra twist still returns KNOTTED") {
    Verdict v = decide_fixture("trefoil_kinked", quick());
    CHECK(v.kind == VerdictKind::Knotted);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->residual_bound == 0);  // exact coloring path
}

TEST_CASE("five- and six-crossing knots are KNOTTED via their torsion prime") {
    CHECK(decide_fixture("knot_5_1", quick()).stats.colorable_primes ==
          std::vector<int>{5});
    CHECK(decide_fixture("knot_5_1", quick()).kind == VerdictKind::Knotted);
    CHECK(decide_fixture("knot_5_2", quick()).stats.colorable_primes ==
          std::vector<int>{7});
    CHECK(decide_fixture("knot_6_1", quick()).kind == VerdictKind::Knotted);
}

TEST_CASE("zero budgets yield UNRESOLVED: no work permitted") {
    DecideConfig boxes = quick(0);
    DecideConfig restarts = quick();
    restarts.restarts = 0;
    DecideConfig seconds = quick();
    seconds.budget_seconds = 0.0;
    for (const DecideConfig& cfg : {boxes, restarts, seconds}) {
        Verdict v = decide_fixture("trefoil", cfg);
        CHECK(v.kind == VerdictKind::Unresolved);
        CHECK_FALSE(v.feasible.has_value());
        CHECK(v.note == "no work permitted: a budget is zero");
        CHECK(v.to_json()["feasible"].is_null());
    }
}

TEST_CASE("invalid configuration is rejected") {
    DecideConfig bad_delta = quick();
    bad_delta.delta = Rat(0);
    CHECK_THROWS_AS(decide_fixture("trefoil", bad_delta),
                    std::invalid_argument);
    DecideConfig bad_threads = quick();
    bad_threads.threads = 0;
    CHECK_THROWS_AS(decide_fixture("trefoil", bad_threads),
                    std::invalid_argument);
}

TEST_CASE("verdict JSON is byte-identical across repeated runs") {
    for (const char* name : {"trefoil", "unknot_2", "figure_eight"}) {
        std::string a = decide_fixture(name, quick()).to_json().dump(2);
        std::string b = decide_fixture(name, quick()).to_json().dump(2);
        CHECK(a == b);
    }
}

TEST_CASE("verdict is invariant across thread counts") {
    for (const char* name : {"unknot_2", "trefoil"}) {
        std::vector<nlohmann::json> runs;
        for (int t : {1, 2, 8}) {
            DecideConfig cfg = quick();
            cfg.threads = t;
            nlohmann::json j = decide_fixture(name, cfg).to_json();
            j.erase("config");  // echoes the differing thread count
            runs.push_back(std::move(j));
        }
        CHECK(runs[0] == runs[1]);
        CHECK(runs[0] == runs[2]);
    }
}

TEST_CASE("shared-trace refutation agrees with the full system") {
    DecideConfig full = quick();
    DecideConfig shared = quick();
    shared.shared_trace = true;
    for (const char* name : {"unknot_1", "unknot_2"}) {
        Verdict a = decide_fixture(name, full);
        Verdict b = decide_fixture(name, shared);
        CHECK(a.kind == VerdictKind::Unknot);
        CHECK(b.kind == VerdictKind::Unknot);
    }
    // On knots the oracle settles the verdict before refutation either way.
    CHECK(decide_fixture("trefoil", shared).kind == VerdictKind::Knotted);
}
