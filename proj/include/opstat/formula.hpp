#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "opstat/term.hpp"

namespace opstat {

/// Immutable formula tree over the equality predicate.
class Formula {
public:
  enum class Kind : uint8_t { Eq, Not, And, Or, Implies, Forall, Exists };

  Formula() = default;  // null formula, internal use only
  bool null() const { return !p_; }

  Kind kind() const { return p_->kind; }
  const Term& lhs() const { return p_->lhs; }
  const Term& rhs() const { return p_->rhs; }
  const Formula& child(size_t i = 0) const { return p_->kids[i]; }
  size_t child_count() const { return p_->kids.size(); }
  VarId var() const { return p_->var; }
  uint32_t size() const { return p_->size; }

  bool is_eq() const { return p_->kind == Kind::Eq; }
  bool is_quantifier() const { return p_->kind == Kind::Forall || p_->kind == Kind::Exists; }

  bool same_node(const Formula& o) const { return p_ == o.p_; }

  friend Formula mk_eq(const Term&, const Term&);
  friend Formula mk_unary(Formula::Kind, Formula);
  friend Formula mk_binary(Formula::Kind, Formula, Formula);
  friend Formula mk_quant(Formula::Kind, VarId, Formula);

private:
  struct Node {
    Kind kind;
    Term lhs, rhs;
    std::vector<Formula> kids;
    VarId var{};
    uint32_t size;
  };
  explicit Formula(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
};

Formula mk_eq(const Term& s, const Term& t);  // throws SortError when sorts differ
Formula mk_not(Formula f);
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_implies(Formula a, Formula b);
Formula mk_forall(const Signature& sig, VarId v, Formula f);
Formula mk_exists(const Signature& sig, VarId v, Formula f);

/// Fold a nonempty list with mk_and / mk_or (right-associated).
Formula mk_conj(std::vector<Formula> fs);
Formula mk_disj(std::vector<Formula> fs);

int compare_formulas(const Formula& a, const Formula& b);
bool equal_formulas(const Formula& a, const Formula& b);

bool is_quantifier_free(const Formula& f);
bool is_ground_sentence(const Formula& f);
bool is_arithmetic(const Signature& sig, const Formula& f);
std::set<VarId> free_vars(const Formula& f);

void check_sorts(const Signature& sig, const Formula& f);

std::string render_formula(const Signature& sig, const Formula& f);

/// Capture-avoiding substitution of free variable occurrences. Bound
/// variables colliding with variables of a replacement term are renamed via
/// fresh variables added to sig.
Formula substitute(Signature& sig, const Formula& f, const std::map<VarId, Term>& bindings);

}  // namespace opstat
