// unknot — decide whether a knot diagram given as a PD code represents the
// unknot.
//
// Subcommands:
//   parse   print a structural summary of the diagram
//   system  emit the real polynomial system {P = 0, N != 0} (JSON, SMT-LIB2)
//   decide  run the full decision pipeline and print a verdict
//   oracle  report Fox p-coloring counts per prime
//
// decide exit codes: 0 = UNKNOT, 10 = KNOTTED, 20 = UNRESOLVED, 1 = input
// error. Every flag can also be supplied through an environment variable
// named UNKNOT_<FLAG> (uppercased, dashes to underscores); command-line
// values win. Wall-clock time is reported on stderr only, so identical
// (input, config, seed) triples produce byte-identical stdout.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unknot/coloring.hpp"
#include "unknot/decide.hpp"
#include "unknot/diagram.hpp"
#include "unknot/smtlib.hpp"
#include "unknot/system.hpp"
#include "unknot/wirtinger.hpp"

namespace {

using namespace unknot;

// Inline PD text is accepted directly; anything else is a path to a file
// containing the PD text.
std::string load_input(const std::string& arg) {
    size_t first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg.compare(first, 2, "PD") == 0)
        return arg;
    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open input file: " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Exact rational from "p/q", integer, decimal, or scientific notation
// (1/100, 0.01, 1e-2 all denote the same rational).
Rat parse_rat(const std::string& text) {
    const std::string err = "cannot parse rational: " + text;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::runtime_error(err);
    if (size_t slash = s.find('/'); slash != std::string::npos) {
        try {
            Rat num(Int(s.substr(0, slash)));
            Rat den(Int(s.substr(slash + 1)));
            if (den == 0) throw std::runtime_error(err);
            return num / den;
        } catch (const std::exception&) {
            throw std::runtime_error(err);
        }
    }
    size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-'))
        negative = s[pos++] == '-';
    std::string digits;
    long long frac_digits = 0, exponent = 0;
    auto take_digits = [&](long long* count) {
        bool any = false;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            digits += s[pos++];
            if (count) ++*count;
            any = true;
        }
        return any;
    };
    bool int_part = take_digits(nullptr);
    bool frac_part = false;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        frac_part = take_digits(&frac_digits);
    }
    if (!int_part && !frac_part) throw std::runtime_error(err);
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        bool exp_neg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-'))
            exp_neg = s[pos++] == '-';
        if (pos >= s.size()) throw std::runtime_error(err);
        std::string es;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            es += s[pos++];
        if (es.empty() || es.size() > 6) throw std::runtime_error(err);
        exponent = std::stoll(es);
        if (exp_neg) exponent = -exponent;
    }
    if (pos != s.size()) throw std::runtime_error(err);
    Rat value(Int(digits.empty() ? "0" : digits));
    long long shift = exponent - frac_digits;
    Rat ten(10);
    for (long long i = 0; i < shift; ++i) value *= ten;
    for (long long i = 0; i < -shift; ++i) value /= ten;
    return negative ? -value : value;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

int run_parse(const std::string& input, const std::string& format) {
    KnotDiagram d = parse_pd(load_input(input));
    if (format == "json") {
        nlohmann::json j = diagram_to_json(d);
        j["n"] = d.n;
        j["arc_count"] = d.arc_count;
        j["signs"] = d.input_signs;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (d.n == 0) {
        std::cout << "n=0 (round unknot)\n";
        return 0;
    }
    std::string signs;
    for (size_t i = 0; i < d.input_signs.size(); ++i) {
        if (i) signs += ",";
        signs += d.input_signs[i] > 0 ? "+" : "-";
    }
    std::cout << "n=" << d.n << ", signs [" << signs << "]\n";
    std::cout << "arcs 1.." << d.arc_count
              << " (arc k ends under crossing k)\n";
    const WirtingerPresentation pres = build_presentation(d);
    std::cout << "presentation: " << presentation_to_text(pres) << "\n";
    return 0;
}

int run_system(const std::string& input, const std::string& format,
               const std::string& out_path, const std::string& smtlib_path,
               bool shared_trace) {
    KnotDiagram d = parse_pd(load_input(input));
    if (d.n == 0) {
        std::cerr << "trivial diagram; decide directly\n";
        return 1;
    }
    RealSystem sys = build_system(build_presentation(d), shared_trace);
    const std::string json_text = system_to_json(sys).dump(2);
    if (out_path.empty() || out_path == "-") {
        std::cout << json_text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write: " + out_path);
        out << json_text << "\n";
    }
    if (!smtlib_path.empty()) {
        std::ofstream out(smtlib_path);
        if (!out) throw std::runtime_error("cannot write: " + smtlib_path);
        out << system_to_smtlib(sys);
    }
    CoefficientStats st = coefficient_stats(sys);
    auto set_text = [](const std::set<Int>& xs) {
        std::string s = "{";
        for (auto it = xs.begin(); it != xs.end(); ++it) {
            if (it != xs.begin()) s += ",";
            s += it->str();
        }
        return s + "}";
    };
    std::ostream& info = std::cerr;
    info << "variables=" << st.variable_count << " degree=" << st.degree
         << " P_terms=" << sys.P.term_count()
         << " N_terms=" << sys.N.term_count() << "\n"
         << "coefficients=" << set_text(st.coefficient_set)
         << " pre_squaring=" << set_text(st.pre_squaring_set) << "\n";
    (void)format;
    return 0;
}

int run_oracle(const std::string& input, const std::string& format,
               const std::vector<int>& primes) {
    KnotDiagram d = parse_pd(load_input(input));
    if (d.n == 0) {
        if (format == "json")
            std::cout << nlohmann::json{{"n", 0},
                                        {"primes", nlohmann::json::array()}}
                             .dump(2)
                      << "\n";
        else
            std::cout << "n=0: no generators; every coloring is trivial\n";
        return 0;
    }
    const WirtingerPresentation pres = build_presentation(d);
    nlohmann::json rows = nlohmann::json::array();
    for (int p : primes) {
        Int count = count_colorings(pres, p);
        bool colorable = is_colorable(pres, p);
        if (format == "json")
            rows.push_back({{"p", p},
                            {"count", count.str()},
                            {"colorable", colorable}});
        else
            std::cout << "p=" << p << ": count=" << count.str() << ", "
                      << (colorable ? "colorable" : "not colorable") << "\n";
    }
    if (format == "json")
        std::cout << nlohmann::json{{"n", pres.n}, {"primes", rows}}.dump(2)
                  << "\n";
    return 0;
}

std::string verdict_text(const Verdict& v) {
    std::ostringstream out;
    out << "verdict: " << verdict_name(v.kind) << "\n";
    if (v.feasible)
        out << "feasible: " << (*v.feasible ? "yes" : "no")
            << (*v.feasible
                    ? " — {P = 0, N != 0} has a certified solution: knotted"
                    : " — no solution with N >= delta exists: unknot at "
                      "level delta")
            << "\n";
    else
        out << "feasible: unknown\n";
    out << "delta: " << v.delta.str() << "\n";
    out << "n: " << v.n << "\n";
    if (v.certificate) {
        const Certificate& c = *v.certificate;
        out << "certificate: method=" << c.method
            << " residual_bound=" << c.residual_bound.str()
            << " n_lower=" << c.n_lower.str();
        if (c.p != 0)
            out << " p=" << c.p << " colors=[" << join_ints(c.colors) << "]";
        if (c.unique_in_box) out << " unique_in_box";
        out << "\n";
    }
    if (v.witness) {
        char buf[40];
        for (int k = 1; k <= v.witness->n(); ++k) {
            const Quat& q = v.witness->tuples[size_t(k - 1)];
            out << "witness g" << k << ": (";
            for (int c = 0; c < 4; ++c) {
                std::snprintf(buf, sizeof buf, "%.17g", q[size_t(c)]);
                out << (c ? ", " : "") << buf;
            }
            out << ")\n";
        }
    }
    out << "colorable_primes: [" << join_ints(v.stats.colorable_primes)
        << "]\n";
    if (v.stats.search_ran)
        out << "search: seeds_tried=" << v.stats.seeds_tried
            << " restarts_used=" << v.stats.restarts_used << "\n";
    if (v.stats.refute_ran) {
        const RefuteOutcome& r = v.stats.refute;
        out << "refute: boxes_processed=" << r.boxes_processed
            << " boxes_pruned=" << r.boxes_pruned
            << " boxes_stuck=" << r.boxes_stuck << " max_depth=" << r.max_depth;
        if (r.budget_exhausted) out << " budget_exhausted";
        if (r.timed_out) out << " timed_out";
        out << "\n";
    }
    out << "note: " << v.note << "\n";
    return out.str();
}

int run_decide(const std::string& input, const std::string& format,
               const DecideConfig& cfg) {
    KnotDiagram d = parse_pd(load_input(input));
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v = decide(d, cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (format == "json")
        std::cout << v.to_json().dump(2) << "\n";
    else
        std::cout << verdict_text(v);
    std::fprintf(stderr, "wall_seconds=%.3f\n", wall);
    switch (v.kind) {
        case VerdictKind::Unknot:
            return 0;
        case VerdictKind::Knotted:
            return 10;
        default:
            return 20;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "unknot — decide whether a PD-coded knot diagram represents the "
        "unknot"};
    app.require_subcommand(1);

    std::string input, format = "text", delta_text = "1/10000";
    std::string out_path, smtlib_path;
    std::vector<int> primes = {3, 5, 7, 11, 13};
    DecideConfig cfg;
    bool shared_trace = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", input,
                        "inline PD text (e.g. 'PD[X[1,4,2,3]]') or a path to "
                        "a file containing it")
            ->required();
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->envname("UNKNOT_FORMAT");
    };

    CLI::App* parse_cmd =
        app.add_subcommand("parse", "print a structural diagram summary");
    add_common(parse_cmd);

    CLI::App* system_cmd = app.add_subcommand(
        "system", "emit the polynomial system {P = 0, N != 0}");
    add_common(system_cmd);
    system_cmd->add_option("--out", out_path,
                           "write the system JSON here instead of stdout");
    system_cmd
        ->add_option("--smtlib", smtlib_path, "also write an SMT-LIB2 file")
        ->envname("UNKNOT_SMTLIB");
    system_cmd
        ->add_flag("--shared-trace", shared_trace,
                   "identify all trace coordinates a_k := a_1")
        ->envname("UNKNOT_SHARED_TRACE");

    CLI::App* decide_cmd =
        app.add_subcommand("decide", "run the full decision pipeline");
    add_common(decide_cmd);
    decide_cmd->add_option("--delta", delta_text,
                           "robustness level (rational or decimal)")
        ->envname("UNKNOT_DELTA");
    decide_cmd
        ->add_option("--budget-seconds", cfg.budget_seconds,
                     "wall-clock budget; negative = unlimited")
        ->envname("UNKNOT_BUDGET_SECONDS");
    decide_cmd
        ->add_option("--budget-boxes", cfg.budget_boxes,
                     "refutation box budget")
        ->envname("UNKNOT_BUDGET_BOXES");
    decide_cmd
        ->add_option("--restarts", cfg.restarts, "witness search restarts")
        ->envname("UNKNOT_RESTARTS");
    decide_cmd->add_option("--threads", cfg.threads, "refutation worker count")
        ->envname("UNKNOT_THREADS");
    decide_cmd->add_option("--seed", cfg.seed, "random seed")
        ->envname("UNKNOT_SEED");
    decide_cmd
        ->add_flag("--shared-trace", cfg.shared_trace,
                   "refute with all trace coordinates identified")
        ->envname("UNKNOT_SHARED_TRACE");

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "Fox p-coloring counts per prime");
    add_common(oracle_cmd);
    oracle_cmd->add_option("--primes", primes, "odd primes to test")
        ->envname("UNKNOT_PRIMES");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(parse_cmd)) return run_parse(input, format);
        if (app.got_subcommand(system_cmd))
            return run_system(input, format, out_path, smtlib_path,
                              shared_trace);
        if (app.got_subcommand(oracle_cmd))
            return run_oracle(input, format, primes);
        cfg.delta = parse_rat(delta_text);
        return run_decide(input, format, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
