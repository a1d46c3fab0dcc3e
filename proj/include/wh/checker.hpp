#pragma once

// Validity of equations, quasiequations and clauses: exhaustive on finite
// algebras, and by two independent routes for one-variable identities over V(P).

#include "wh/chains.hpp"
#include "wh/presentation.hpp"
#include "wh/term.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wh {

struct Equation {
    Term lhs;
    Term rhs;

    /// "p ~ q"
    static Equation parse(std::string_view text);
    std::string to_string() const;
    std::set<std::string> variables() const;
};

/// premises => conclusions; a quasiequation has exactly one conclusion.
struct Clause {
    std::vector<Equation> premises;
    std::vector<Equation> conclusions;

    /// "e1, e2 => f1 | f2"; a bare equation is a clause without premises.
    static Clause parse(std::string_view text);
    std::string to_string() const;
    std::set<std::string> variables() const;
};

enum class Verdict { Valid, Invalid, Undecided };
const char* verdict_name(Verdict v);

struct CheckResult {
    Verdict verdict = Verdict::Valid;
    std::string algebra;                                          // where the witness lives
    std::vector<std::pair<std::string, std::string>> assignment;  // variable -> element
    std::string note;

    bool valid() const { return verdict == Verdict::Valid; }
};

/// Exhaustive over all assignments in lexicographic order (first variable most
/// significant); the first failing assignment is the witness.
CheckResult valid_identity_finite(const Equation& e, const ChainDescriptor& alg);
CheckResult valid_identity_finite(const Equation& e, const ProductAlgebra& alg);
CheckResult valid_clause_finite(const Clause& c, const ChainDescriptor& alg);
CheckResult valid_clause_finite(const Clause& c, const ProductAlgebra& alg);

struct RouteResults {
    CheckResult points;     // route A
    CheckResult functions;  // route B
};

/// Route A evaluates at every one-generated chain of V(P): all of L_k for k in
/// (I u J)v, g_{k,h} and neg g_{k,h} in L(k,h) for k in Jv, and c in C_omega when
/// J u K is nonempty. Route B compares f = term_to_pl(lhs) and g = term_to_pl(rhs):
/// equal values on script-I and equal germs on script-J.
RouteResults identity_routes(const Equation& e, const Presentation& p);

/// One-variable identities: both routes, which must agree (std::logic_error otherwise).
/// Several variables: decided on the finite generators when J = K = {}, Undecided otherwise.
CheckResult valid_identity_variety(const Equation& e, const Presentation& p);

/// Validity in L_n, which for these tabular logics is also admissibility.
CheckResult derivable_rule_tabular(const Clause& c, std::int64_t n);

}  // namespace wh
