#pragma once
// SMT-LIB2 (logic QF_NRA) export of the real system, for cross-validation
// with external solvers. Output is bit-exact deterministic: declarations in
// variable-id order, monomials in graded-lexicographic order, exact integer
// coefficients.

#include <sstream>
#include <string>

#include "unknot/system.hpp"

namespace unknot {

namespace detail {
inline std::string smt_int(const Int& c) {
    if (c < 0) return "(- " + Int(-c).str() + ")";
    return c.str();
}
}  // namespace detail

inline std::string smtlib_poly(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    const bool sum = p.term_count() > 1;
    if (sum) out << "(+";
    for (const auto& [mono, coeff] : p.terms()) {
        std::string term;
        if (mono.empty()) {
            term = detail::smt_int(coeff);
        } else {
            term = "(* " + detail::smt_int(coeff);
            for (uint16_t id : mono) term += " " + Var::from_id(id).name();
            term += ")";
        }
        if (sum)
            out << " " << term;
        else
            out << term;
    }
    if (sum) out << ")";
    return out.str();
}

inline std::string system_to_smtlib(const RealSystem& sys) {
    std::ostringstream out;
    out << "(set-logic QF_NRA)\n";
    for (int id = 0; id < 4 * sys.n; ++id)
        out << "(declare-const " << Var::from_id(id).name() << " Real)\n";
    out << "(assert (= " << smtlib_poly(sys.P) << " 0))\n";
    out << "(assert (not (= " << smtlib_poly(sys.N) << " 0)))\n";
    out << "(check-sat)\n";
    return out.str();
}

}  // namespace unknot
