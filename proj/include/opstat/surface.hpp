#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opstat/formula.hpp"

namespace opstat {

/// Unresolved term syntax: rewrite rules and hints are kept in surface form
/// because their identifiers resolve against contexts that only exist later
/// (rule variables are sort-schematic; hint terms may name variables that
/// Herbrandisation turns into constants).
struct SurfaceTerm {
  enum class Kind : uint8_t { Ident, Zero, Apply };
  Kind kind = Kind::Ident;
  std::string name;                                  // Ident, Apply ("+","-","*" included)
  std::optional<std::pair<std::string, std::string>> zero_sort;  // annotated 0[u,v]
  std::vector<SurfaceTerm> args;
  int line = 0, col = 0;
};

std::string render_surface(const SurfaceTerm& t);

/// A universal rewrite rule lhs |-> rhs. Identifiers that are not declared
/// symbols are pattern variables; symbol identifiers match every overload of
/// their name, so one rule covers all sorts at which it is well-formed.
struct RewriteRule {
  SurfaceTerm lhs;
  SurfaceTerm rhs;
};

/// Checks vars(rhs) subset of vars(lhs) and that lhs is not a bare variable.
void validate_rule(const Signature& sig, const RewriteRule& rule);

/// Exhaustive innermost rewriting, up to step_cap rewrites in total
/// (RewriteBudgetError beyond that). A rule instance whose right side cannot
/// be resolved at the matched sorts is skipped.
Term apply_universal_rules(const Signature& sig, const Term& t,
                           const std::vector<RewriteRule>& rules, uint64_t step_cap = 10000);
Formula apply_universal_rules(const Signature& sig, const Formula& f,
                              const std::vector<RewriteRule>& rules, uint64_t step_cap = 10000);

/// Conjoins to every positive identity of matching sort the companion
/// identity under the unary symbol (all overloads of `fname` considered);
/// implication conclusions are extended the same way. Statements appear
/// after the originals.
Formula extend_with_function(const Signature& sig, const Formula& f, const std::string& fname);

/// Hint statement: bindings from existential variable names to surface terms.
struct HintBlock {
  std::vector<std::pair<std::string, SurfaceTerm>> bindings;
};

}  // namespace opstat
