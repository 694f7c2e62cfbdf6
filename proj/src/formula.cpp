#include "opstat/formula.hpp"

#include <sstream>

namespace opstat {

Formula mk_eq(const Term& s, const Term& t) {
  if (s.null() || t.null()) throw SortError("null term in equation");
  if (s.sort() != t.sort()) throw SortError("equation sides have different sorts");
  Formula::Node n;
  n.kind = Formula::Kind::Eq;
  n.lhs = s;
  n.rhs = t;
  n.size = 1 + s.size() + t.size();
  return Formula(std::make_shared<const Formula::Node>(std::move(n)));
}

Formula mk_unary(Formula::Kind k, Formula f) {
  Formula::Node n;
  n.kind = k;
  n.size = 1 + f.size();
  n.kids.push_back(std::move(f));
  return Formula(std::make_shared<const Formula::Node>(std::move(n)));
}

Formula mk_binary(Formula::Kind k, Formula a, Formula b) {
  Formula::Node n;
  n.kind = k;
  n.size = 1 + a.size() + b.size();
  n.kids.push_back(std::move(a));
  n.kids.push_back(std::move(b));
  return Formula(std::make_shared<const Formula::Node>(std::move(n)));
}

Formula mk_quant(Formula::Kind k, VarId v, Formula f) {
  Formula::Node n;
  n.kind = k;
  n.var = v;
  n.size = 1 + f.size();
  n.kids.push_back(std::move(f));
  return Formula(std::make_shared<const Formula::Node>(std::move(n)));
}

Formula mk_not(Formula f) { return mk_unary(Formula::Kind::Not, std::move(f)); }
Formula mk_and(Formula a, Formula b) { return mk_binary(Formula::Kind::And, std::move(a), std::move(b)); }
Formula mk_or(Formula a, Formula b) { return mk_binary(Formula::Kind::Or, std::move(a), std::move(b)); }
Formula mk_implies(Formula a, Formula b) {
  return mk_binary(Formula::Kind::Implies, std::move(a), std::move(b));
}

Formula mk_forall(const Signature& sig, VarId v, Formula f) {
  if (!sig.valid(v)) throw UnknownSymbolError("unknown quantified variable");
  return mk_quant(Formula::Kind::Forall, v, std::move(f));
}

Formula mk_exists(const Signature& sig, VarId v, Formula f) {
  if (!sig.valid(v)) throw UnknownSymbolError("unknown quantified variable");
  return mk_quant(Formula::Kind::Exists, v, std::move(f));
}

Formula mk_conj(std::vector<Formula> fs) {
  if (fs.empty()) throw Error("empty conjunction");
  Formula out = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) out = mk_and(fs[i], std::move(out));
  return out;
}

Formula mk_disj(std::vector<Formula> fs) {
  if (fs.empty()) throw Error("empty disjunction");
  Formula out = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) out = mk_or(fs[i], std::move(out));
  return out;
}

int compare_formulas(const Formula& a, const Formula& b) {
  if (a.same_node(b)) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  auto ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  if (a.is_eq()) {
    int c = compare_terms(a.lhs(), b.lhs());
    if (c != 0) return c;
    return compare_terms(a.rhs(), b.rhs());
  }
  if (a.is_quantifier() && a.var() != b.var()) return a.var() < b.var() ? -1 : 1;
  for (size_t i = 0; i < a.child_count(); ++i) {
    int c = compare_formulas(a.child(i), b.child(i));
    if (c != 0) return c;
  }
  return 0;
}

bool equal_formulas(const Formula& a, const Formula& b) { return compare_formulas(a, b) == 0; }

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  if (f.is_eq()) return true;
  for (size_t i = 0; i < f.child_count(); ++i) {
    if (!is_quantifier_free(f.child(i))) return false;
  }
  return true;
}

bool is_ground_sentence(const Formula& f) {
  if (f.is_eq()) return is_ground(f.lhs()) && is_ground(f.rhs());
  if (f.is_quantifier()) return false;
  for (size_t i = 0; i < f.child_count(); ++i) {
    if (!is_ground_sentence(f.child(i))) return false;
  }
  return true;
}

bool is_arithmetic(const Signature& sig, const Formula& f) {
  if (f.is_eq()) return is_arithmetic(sig, f.lhs()) && is_arithmetic(sig, f.rhs());
  for (size_t i = 0; i < f.child_count(); ++i) {
    if (!is_arithmetic(sig, f.child(i))) return false;
  }
  return true;
}

namespace {
void free_vars_rec(const Formula& f, std::set<VarId>& bound, std::set<VarId>& out) {
  if (f.is_eq()) {
    std::set<VarId> vs;
    collect_vars(f.lhs(), vs);
    collect_vars(f.rhs(), vs);
    for (VarId v : vs)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f.is_quantifier()) {
    bool inserted = bound.insert(f.var()).second;
    free_vars_rec(f.child(), bound, out);
    if (inserted) bound.erase(f.var());
    return;
  }
  for (size_t i = 0; i < f.child_count(); ++i) free_vars_rec(f.child(i), bound, out);
}
}  // namespace

std::set<VarId> free_vars(const Formula& f) {
  std::set<VarId> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

void check_sorts(const Signature& sig, const Formula& f) {
  if (f.is_eq()) {
    check_sorts(sig, f.lhs());
    check_sorts(sig, f.rhs());
    if (f.lhs().sort() != f.rhs().sort()) {
      throw SortError("equation sides have different sorts: " + render_term(sig, f.lhs()) +
                      " vs " + render_term(sig, f.rhs()));
    }
    return;
  }
  if (f.is_quantifier() && !sig.valid(f.var())) {
    throw UnknownSymbolError("quantified variable not declared in signature");
  }
  for (size_t i = 0; i < f.child_count(); ++i) check_sorts(sig, f.child(i));
}

namespace {

// !  binds tighter than &, & tighter than |, | tighter than ->.
enum FPrec { PrecImp = 0, PrecOr = 1, PrecAnd = 2, PrecNot = 3 };

void render(const Signature& sig, const Formula& f, std::ostringstream& out, int parent) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      out << render_term(sig, f.lhs()) << " = " << render_term(sig, f.rhs());
      return;
    case Formula::Kind::Not:
      // negated equations render as !=
      if (f.child().is_eq()) {
        const Formula& e = f.child();
        out << render_term(sig, e.lhs()) << " != " << render_term(sig, e.rhs());
        return;
      }
      out << "!";
      if (f.child().is_quantifier()) {
        out << "(";
        render(sig, f.child(), out, PrecImp);
        out << ")";
      } else {
        render(sig, f.child(), out, PrecNot);
      }
      return;
    case Formula::Kind::And:
      if (parent > PrecAnd) out << "(";
      render(sig, f.child(0), out, PrecAnd);
      out << " & ";
      render(sig, f.child(1), out, PrecAnd);
      if (parent > PrecAnd) out << ")";
      return;
    case Formula::Kind::Or:
      if (parent > PrecOr) out << "(";
      render(sig, f.child(0), out, PrecOr);
      out << " | ";
      render(sig, f.child(1), out, PrecOr);
      if (parent > PrecOr) out << ")";
      return;
    case Formula::Kind::Implies:
      if (parent > PrecImp) out << "(";
      render(sig, f.child(0), out, PrecImp + 1);
      out << " -> ";
      render(sig, f.child(1), out, PrecImp);
      if (parent > PrecImp) out << ")";
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (parent > PrecImp) out << "(";
      const char* q = f.kind() == Formula::Kind::Forall ? "forall" : "exists";
      const VarInfo& vi = sig.variable(f.var());
      out << q << " " << vi.name << ":(" << sig.object_name(vi.sort.src) << ","
          << sig.object_name(vi.sort.tgt) << ") . ";
      render(sig, f.child(), out, PrecImp);
      if (parent > PrecImp) out << ")";
      return;
    }
  }
}

}  // namespace

std::string render_formula(const Signature& sig, const Formula& f) {
  std::ostringstream out;
  render(sig, f, out, PrecImp);
  return out.str();
}

namespace {

Formula substitute_rec(Signature& sig, const Formula& f, std::map<VarId, Term> bindings,
                       const std::set<VarId>& replacement_vars) {
  if (bindings.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return mk_eq(substitute_term(sig, f.lhs(), bindings), substitute_term(sig, f.rhs(), bindings));
    case Formula::Kind::Not:
      return mk_not(substitute_rec(sig, f.child(), bindings, replacement_vars));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      // sequenced: fresh-variable naming must not depend on the compiler's
      // argument evaluation order
      Formula a = substitute_rec(sig, f.child(0), bindings, replacement_vars);
      Formula b = substitute_rec(sig, f.child(1), bindings, replacement_vars);
      return mk_binary(f.kind(), std::move(a), std::move(b));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      VarId x = f.var();
      bindings.erase(x);  // bound occurrences are not replaced
      if (bindings.empty()) return f;
      Formula body = f.child();
      if (replacement_vars.count(x)) {
        // Rename the bound variable to avoid capturing a variable of a
        // replacement term.
        VarId fresh = sig.fresh_variable(sig.variable(x).name, sig.variable(x).sort);
        std::map<VarId, Term> rename{{x, mk_var(sig, fresh)}};
        body = substitute_rec(sig, body, rename, {});
        x = fresh;
      }
      return mk_quant(f.kind(), x, substitute_rec(sig, body, bindings, replacement_vars));
    }
  }
  throw Error("unreachable");
}

}  // namespace

Formula substitute(Signature& sig, const Formula& f, const std::map<VarId, Term>& bindings) {
  for (const auto& [v, t] : bindings) {
    if (!sig.valid(v)) throw UnknownSymbolError("substitution binds unknown variable");
    if (t.null()) throw SortError("substitution binds null term");
    if (sig.variable(v).sort != t.sort()) {
      throw SortError("substitution sort mismatch for variable '" + sig.variable(v).name + "'");
    }
  }
  std::set<VarId> replacement_vars;
  for (const auto& [v, t] : bindings) collect_vars(t, replacement_vars);
  return substitute_rec(sig, f, bindings, replacement_vars);
}

}  // namespace opstat
