#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opstat/formula.hpp"

namespace opstat {

/// An equation s = t used as a clause literal; polarity is carried by the
/// containing list (Clause::negatives vs Clause::positives).
struct Literal {
  Term lhs, rhs;
};

int compare_literals(const Literal& a, const Literal& b);

/// Disjunction  \/ (s_i != t_i)  \/  (p_k = q_k).
struct Clause {
  std::vector<Literal> negatives;
  std::vector<Literal> positives;

  /// Sorts literals by the total term order and removes duplicates, so equal
  /// clauses have identical representations.
  void canonicalise();
  bool tautological() const;
  Formula to_formula(const Signature& sig) const;
};

int compare_clauses(const Clause& a, const Clause& b);
std::string render_clause(const Signature& sig, const Clause& c);

/// Prenex normal form: quantifier prefix followed by a quantifier-free
/// matrix, logically equivalent to the input. Bound variables are renamed
/// apart as needed (fresh variables extend sig).
Formula to_prenex(Signature& sig, const Formula& f);

enum class Quantifier : uint8_t { Forall, Exists };
struct PrefixEntry {
  Quantifier quant;
  VarId var;
};
/// to_prenex split into prefix and matrix.
std::pair<std::vector<PrefixEntry>, Formula> prenex_parts(Signature& sig, const Formula& f);
Formula rebuild_prenex(const Signature& sig, const std::vector<PrefixEntry>& prefix, Formula matrix);

/// CNF of a quantifier-free formula by the three rewrite stages: eliminate
/// implications, move negations inwards, distribute | over &. The clause list
/// is canonically ordered and deduplicated; tautological clauses are retained
/// unless simplify_tautologies is set.
std::vector<Clause> to_cnf(const Formula& f, bool simplify_tautologies = false);

Formula cnf_to_formula(const Signature& sig, const std::vector<Clause>& clauses);

/// Valuation keyed by syntactic atoms (s,t) of equations.
struct AtomKey {
  Term lhs, rhs;
  bool operator<(const AtomKey& o) const {
    int c = compare_terms(lhs, o.lhs);
    if (c != 0) return c < 0;
    return compare_terms(rhs, o.rhs) < 0;
  }
};
using Valuation = std::map<AtomKey, bool>;

/// Standard boolean evaluation treating each distinct equation as a
/// propositional variable. Throws UnassignedAtomError on a missing atom and
/// NotQuantifierFreeError on quantifiers.
bool eval_propositional(const Formula& f, const Valuation& valuation);

/// All distinct equation atoms of a quantifier-free formula, in term order.
std::vector<AtomKey> collect_atoms(const Formula& f);

}  // namespace opstat
