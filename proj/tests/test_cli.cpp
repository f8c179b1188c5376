// Drives the installed CLI binary end to end through a shell: exit-code
// contract, output formats, environment-variable overrides, and error paths.
// The binary location arrives via UNKNOT_CLI_BIN (set by CTest).

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "unknot/fixtures.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string bin() {
    const char* b = std::getenv("UNKNOT_CLI_BIN");
    REQUIRE(b != nullptr);
    return std::string("'") + b + "'";
}

std::string quoted_pd(const std::string& name) {
    return "'" + unknot::fixtures::pd(name) + "'";
}

}  // namespace

TEST_CASE("parse prints the diagram summary") {
    RunResult r = run(bin() + " parse " + quoted_pd("trefoil"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("n=3, signs [-,-,-]") != std::string::npos);
    CHECK(r.out.find("presentation:") != std::string::npos);

    RunResult empty = run(bin() + " parse 'PD[]'");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.find("n=0 (round unknot)") != std::string::npos);
}

TEST_CASE("malformed input exits nonzero with an error on stderr") {
    RunResult r = run(bin() + " parse 'PD[X(1,2,3)]' 2>&1");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("error:") != std::string::npos);

    RunResult missing = run(bin() + " decide /no/such/file.pd 2>&1");
    CHECK(missing.exit_code == 1);
    CHECK(missing.out.find("cannot open input file") != std::string::npos);
}

TEST_CASE("decide exit codes: 0 unknot, 10 knotted, 20 unresolved") {
    CHECK(run(bin() + " decide 'PD[]' 2>/dev/null").exit_code == 0);
    CHECK(run(bin() + " decide " + quoted_pd("unknot_2") +
              " --delta 1/100 2>/dev/null")
              .exit_code == 0);
    RunResult knotted =
        run(bin() + " decide " + quoted_pd("trefoil") + " 2>/dev/null");
    CHECK(knotted.exit_code == 10);
    CHECK(knotted.out.find("verdict: KNOTTED") != std::string::npos);
    CHECK(knotted.out.find("feasible: yes") != std::string::npos);
    RunResult frozen = run(bin() + " decide " + quoted_pd("trefoil") +
                           " --budget-boxes 0 2>/dev/null");
    CHECK(frozen.exit_code == 20);
    CHECK(frozen.out.find("UNRESOLVED") != std::string::npos);
}

TEST_CASE("decide emits wall time on stderr, never in the JSON") {
    RunResult err_only = run(bin() + " decide " + quoted_pd("trefoil") +
                             " --format json 2>&1 >/dev/null");
    CHECK(err_only.out.find("wall_seconds=") != std::string::npos);
    RunResult json_only = run(bin() + " decide " + quoted_pd("trefoil") +
                              " --format json 2>/dev/null");
    CHECK(json_only.out.find("wall") == std::string::npos);
    nlohmann::json j = nlohmann::json::parse(json_only.out);
    CHECK(j["schema"] == "unknot-verdict/1");
    CHECK(j["verdict"] == "KNOTTED");
    CHECK(j["feasible"] == true);
    CHECK(j["certificate"]["residual_bound"] == "0");
}

TEST_CASE("identical input and config produce byte-identical JSON verdicts") {
    const std::string cmd = bin() + " decide " + quoted_pd("unknot_2") +
                            " --delta 1e-2 --seed 7 --format json 2>/dev/null";
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

TEST_CASE("environment variables configure flags, command line wins") {
    RunResult env = run("UNKNOT_DELTA=1/100 " + bin() + " decide " +
                        quoted_pd("unknot_2") + " --format json 2>/dev/null");
    CHECK(nlohmann::json::parse(env.out)["delta"] == "1/100");
    RunResult cli = run("UNKNOT_DELTA=1/3 " + bin() + " decide " +
                        quoted_pd("unknot_2") +
                        " --delta 1/100 --format json 2>/dev/null");
    CHECK(nlohmann::json::parse(cli.out)["delta"] == "1/100");
}

TEST_CASE("delta accepts rational, decimal, and scientific forms") {
    for (const char* d : {"1/100", "0.01", "1e-2"}) {
        RunResult r = run(bin() + " decide " + quoted_pd("unknot_2") +
                          " --delta " + d + " --format json 2>/dev/null");
        CHECK(nlohmann::json::parse(r.out)["delta"] == "1/100");
    }
    RunResult bad = run(bin() + " decide " + quoted_pd("unknot_2") +
                        " --delta nonsense 2>&1");
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("cannot parse rational") != std::string::npos);
}

TEST_CASE("system writes JSON and SMT-LIB2 files and prints stats") {
    const std::string j = "/tmp/unknot_cli_test_system.json";
    const std::string s = "/tmp/unknot_cli_test_system.smt2";
    RunResult r = run(bin() + " system " + quoted_pd("trefoil") + " --out " +
                      j + " --smtlib " + s + " 2>&1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("variables=12") != std::string::npos);
    CHECK(r.out.find("pre_squaring={-1,1}") != std::string::npos);

    std::ifstream jf(j);
    REQUIRE(jf.good());
    nlohmann::json sys = nlohmann::json::parse(jf);
    CHECK(sys["variable_count"] == 12);
    CHECK(sys["P"].is_array());
    CHECK(sys["N"].is_array());

    std::ifstream sf(s);
    REQUIRE(sf.good());
    std::stringstream smt;
    smt << sf.rdbuf();
    CHECK(smt.str().find("(set-logic QF_NRA)") != std::string::npos);
    CHECK(smt.str().find("(check-sat)") != std::string::npos);
    std::remove(j.c_str());
    std::remove(s.c_str());
}

TEST_CASE("system refuses the empty diagram") {
    RunResult r = run(bin() + " system 'PD[]' 2>&1");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("trivial diagram; decide directly") != std::string::npos);
}

TEST_CASE("oracle reports coloring counts per prime") {
    RunResult r = run(bin() + " oracle " + quoted_pd("trefoil"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("p=3: count=9, colorable") != std::string::npos);
    CHECK(r.out.find("p=5: count=5, not colorable") != std::string::npos);

    RunResult f8 = run(bin() + " oracle " + quoted_pd("figure_eight") +
                       " --primes 5 --format json");
    nlohmann::json j = nlohmann::json::parse(f8.out);
    CHECK(j["primes"][0]["count"] == "25");
    CHECK(j["primes"][0]["colorable"] == true);
}

TEST_CASE("input can come from a file") {
    const std::string path = "/tmp/unknot_cli_test_input.pd";
    {
        std::ofstream out(path);
        out << unknot::fixtures::pd("trefoil") << "\n";
    }
    RunResult r = run(bin() + " decide " + path + " 2>/dev/null");
    CHECK(r.exit_code == 10);
    std::remove(path.c_str());
}
