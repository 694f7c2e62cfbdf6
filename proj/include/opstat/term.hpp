#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "opstat/signature.hpp"

namespace opstat {

/// Immutable term tree. Nodes are shared; copying a Term is O(1).
/// Terms are sort-checked on construction and cache their sort and node
/// count, so sort() and size() are O(1).
class Term {
public:
  enum class Kind : uint8_t { Variable, Constant, Apply };

  Term() = default;  // null term, internal use only
  bool null() const { return !p_; }

  Kind kind() const { return p_->kind; }
  VarId var() const { return VarId{p_->id}; }
  ConstId constant() const { return ConstId{p_->id}; }
  FuncId func() const { return FuncId{p_->id}; }
  const std::vector<Term>& args() const { return p_->args; }
  Sort sort() const { return p_->sort; }
  uint32_t size() const { return p_->size; }

  bool is_var() const { return p_->kind == Kind::Variable; }
  bool is_const() const { return p_->kind == Kind::Constant; }
  bool is_apply() const { return p_->kind == Kind::Apply; }

  friend Term mk_var(const Signature&, VarId);
  friend Term mk_const(const Signature&, ConstId);
  friend Term mk_apply(const Signature&, FuncId, std::vector<Term>);

  bool same_node(const Term& o) const { return p_ == o.p_; }

private:
  struct Node {
    Kind kind;
    uint32_t id;
    Sort sort;
    uint32_t size;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
};

Term mk_var(const Signature& sig, VarId v);
Term mk_const(const Signature& sig, ConstId c);
Term mk_apply(const Signature& sig, FuncId f, std::vector<Term> args);

Term mk_zero(const Signature& sig, Sort s);
Term mk_add(const Signature& sig, const Term& a, const Term& b);
Term mk_neg(const Signature& sig, const Term& a);
Term mk_mul(const Signature& sig, const Term& a, const Term& b);

/// Total order on terms: node count, then kind, then symbol id, then
/// arguments lexicographically. Used for canonical clause ordering.
int compare_terms(const Term& a, const Term& b);
bool equal_terms(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare_terms(a, b) < 0; }
};

bool is_ground(const Term& t);
bool is_arithmetic(const Signature& sig, const Term& t);
void collect_vars(const Term& t, std::set<VarId>& out);

/// Verifies a term against the signature: ids in range, every Apply node
/// matching its FunctionSort. Throws UnknownSymbolError or SortError.
void check_sorts(const Signature& sig, const Term& t);

std::string render_term(const Signature& sig, const Term& t);

Term substitute_term(const Signature& sig, const Term& t, const std::map<VarId, Term>& bindings);

}  // namespace opstat
