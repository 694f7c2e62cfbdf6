#include "opstat/logic.hpp"

#include <algorithm>
#include <sstream>

namespace opstat {

int compare_literals(const Literal& a, const Literal& b) {
  int c = compare_terms(a.lhs, b.lhs);
  if (c != 0) return c;
  return compare_terms(a.rhs, b.rhs);
}

void Clause::canonicalise() {
  auto less = [](const Literal& a, const Literal& b) { return compare_literals(a, b) < 0; };
  auto eq = [](const Literal& a, const Literal& b) { return compare_literals(a, b) == 0; };
  std::sort(negatives.begin(), negatives.end(), less);
  negatives.erase(std::unique(negatives.begin(), negatives.end(), eq), negatives.end());
  std::sort(positives.begin(), positives.end(), less);
  positives.erase(std::unique(positives.begin(), positives.end(), eq), positives.end());
}

bool Clause::tautological() const {
  for (const Literal& n : negatives) {
    for (const Literal& p : positives) {
      if (compare_literals(n, p) == 0) return true;
    }
  }
  return false;
}

Formula Clause::to_formula(const Signature& sig) const {
  (void)sig;
  std::vector<Formula> parts;
  for (const Literal& n : negatives) parts.push_back(mk_not(mk_eq(n.lhs, n.rhs)));
  for (const Literal& p : positives) parts.push_back(mk_eq(p.lhs, p.rhs));
  return mk_disj(std::move(parts));
}

int compare_clauses(const Clause& a, const Clause& b) {
  if (a.negatives.size() != b.negatives.size())
    return a.negatives.size() < b.negatives.size() ? -1 : 1;
  if (a.positives.size() != b.positives.size())
    return a.positives.size() < b.positives.size() ? -1 : 1;
  for (size_t i = 0; i < a.negatives.size(); ++i) {
    int c = compare_literals(a.negatives[i], b.negatives[i]);
    if (c != 0) return c;
  }
  for (size_t i = 0; i < a.positives.size(); ++i) {
    int c = compare_literals(a.positives[i], b.positives[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string render_clause(const Signature& sig, const Clause& c) {
  std::ostringstream out;
  bool first = true;
  for (const Literal& n : c.negatives) {
    if (!first) out << " | ";
    first = false;
    out << render_term(sig, n.lhs) << " != " << render_term(sig, n.rhs);
  }
  for (const Literal& p : c.positives) {
    if (!first) out << " | ";
    first = false;
    out << render_term(sig, p.lhs) << " = " << render_term(sig, p.rhs);
  }
  return out.str();
}

namespace {

// Rename quantified variables so that all binders are pairwise distinct and
// disjoint from every variable occurring elsewhere.
Formula rename_apart(Signature& sig, const Formula& f, std::set<VarId>& used) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return f;
    case Formula::Kind::Not:
      return mk_not(rename_apart(sig, f.child(), used));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      Formula a = rename_apart(sig, f.child(0), used);
      Formula b = rename_apart(sig, f.child(1), used);
      return mk_binary(f.kind(), std::move(a), std::move(b));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      VarId x = f.var();
      Formula body = f.child();
      if (used.count(x)) {
        VarId fresh = sig.fresh_variable(sig.variable(x).name, sig.variable(x).sort);
        std::map<VarId, Term> rename{{x, mk_var(sig, fresh)}};
        body = substitute(sig, body, rename);
        x = fresh;
      }
      used.insert(x);
      return mk_quant(f.kind(), x, rename_apart(sig, body, used));
    }
  }
  throw Error("unreachable");
}

Quantifier flip(Quantifier q) {
  return q == Quantifier::Forall ? Quantifier::Exists : Quantifier::Forall;
}

struct Pulled {
  std::vector<PrefixEntry> prefix;
  Formula matrix;
};

Pulled pull(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return {{}, f};
    case Formula::Kind::Not: {
      Pulled p = pull(f.child());
      for (auto& e : p.prefix) e.quant = flip(e.quant);
      p.matrix = mk_not(std::move(p.matrix));
      return p;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      Pulled a = pull(f.child(0));
      Pulled b = pull(f.child(1));
      a.prefix.insert(a.prefix.end(), b.prefix.begin(), b.prefix.end());
      a.matrix = mk_binary(f.kind(), std::move(a.matrix), std::move(b.matrix));
      return a;
    }
    case Formula::Kind::Implies: {
      Pulled a = pull(f.child(0));
      Pulled b = pull(f.child(1));
      for (auto& e : a.prefix) e.quant = flip(e.quant);
      a.prefix.insert(a.prefix.end(), b.prefix.begin(), b.prefix.end());
      a.matrix = mk_implies(std::move(a.matrix), std::move(b.matrix));
      return a;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Pulled p = pull(f.child());
      Quantifier q =
          f.kind() == Formula::Kind::Forall ? Quantifier::Forall : Quantifier::Exists;
      p.prefix.insert(p.prefix.begin(), PrefixEntry{q, f.var()});
      return p;
    }
  }
  throw Error("unreachable");
}

}  // namespace

std::pair<std::vector<PrefixEntry>, Formula> prenex_parts(Signature& sig, const Formula& f) {
  std::set<VarId> used = free_vars(f);
  Formula renamed = rename_apart(sig, f, used);
  Pulled p = pull(renamed);
  return {std::move(p.prefix), std::move(p.matrix)};
}

Formula rebuild_prenex(const Signature& sig, const std::vector<PrefixEntry>& prefix,
                       Formula matrix) {
  Formula out = std::move(matrix);
  for (size_t i = prefix.size(); i-- > 0;) {
    out = prefix[i].quant == Quantifier::Forall ? mk_forall(sig, prefix[i].var, std::move(out))
                                                : mk_exists(sig, prefix[i].var, std::move(out));
  }
  return out;
}

Formula to_prenex(Signature& sig, const Formula& f) {
  auto [prefix, matrix] = prenex_parts(sig, f);
  return rebuild_prenex(sig, prefix, std::move(matrix));
}

namespace {

// Negation normal form with clause assembly: cnf(f, positive polarity).
void cnf_rec(const Formula& f, bool positive, std::vector<Clause>& out);

std::vector<Clause> cnf_of(const Formula& f, bool positive) {
  std::vector<Clause> out;
  cnf_rec(f, positive, out);
  return out;
}

// Distribute: clauses(a) x clauses(b) unions.
std::vector<Clause> cross(std::vector<Clause> a, std::vector<Clause> b) {
  std::vector<Clause> out;
  out.reserve(a.size() * b.size());
  for (const Clause& ca : a) {
    for (const Clause& cb : b) {
      Clause c = ca;
      c.negatives.insert(c.negatives.end(), cb.negatives.begin(), cb.negatives.end());
      c.positives.insert(c.positives.end(), cb.positives.begin(), cb.positives.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

void cnf_rec(const Formula& f, bool positive, std::vector<Clause>& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq: {
      Clause c;
      (positive ? c.positives : c.negatives).push_back(Literal{f.lhs(), f.rhs()});
      out.push_back(std::move(c));
      return;
    }
    case Formula::Kind::Not:
      cnf_rec(f.child(), !positive, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool conjunctive = (f.kind() == Formula::Kind::And) == positive;
      if (conjunctive) {
        cnf_rec(f.child(0), positive, out);
        cnf_rec(f.child(1), positive, out);
      } else {
        auto crossed = cross(cnf_of(f.child(0), positive), cnf_of(f.child(1), positive));
        out.insert(out.end(), crossed.begin(), crossed.end());
      }
      return;
    }
    case Formula::Kind::Implies: {
      // a -> b  ~>  !a | b
      if (positive) {
        auto crossed = cross(cnf_of(f.child(0), false), cnf_of(f.child(1), true));
        out.insert(out.end(), crossed.begin(), crossed.end());
      } else {
        cnf_rec(f.child(0), true, out);
        cnf_rec(f.child(1), false, out);
      }
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      throw NotQuantifierFreeError("to_cnf requires a quantifier-free formula");
  }
}

}  // namespace

std::vector<Clause> to_cnf(const Formula& f, bool simplify_tautologies) {
  std::vector<Clause> clauses = cnf_of(f, true);
  for (Clause& c : clauses) c.canonicalise();
  if (simplify_tautologies) {
    clauses.erase(std::remove_if(clauses.begin(), clauses.end(),
                                 [](const Clause& c) { return c.tautological(); }),
                  clauses.end());
  }
  std::sort(clauses.begin(), clauses.end(),
            [](const Clause& a, const Clause& b) { return compare_clauses(a, b) < 0; });
  clauses.erase(std::unique(clauses.begin(), clauses.end(),
                            [](const Clause& a, const Clause& b) {
                              return compare_clauses(a, b) == 0;
                            }),
                clauses.end());
  return clauses;
}

Formula cnf_to_formula(const Signature& sig, const std::vector<Clause>& clauses) {
  std::vector<Formula> parts;
  parts.reserve(clauses.size());
  for (const Clause& c : clauses) parts.push_back(c.to_formula(sig));
  return mk_conj(std::move(parts));
}

bool eval_propositional(const Formula& f, const Valuation& valuation) {
  switch (f.kind()) {
    case Formula::Kind::Eq: {
      auto it = valuation.find(AtomKey{f.lhs(), f.rhs()});
      if (it == valuation.end()) throw UnassignedAtomError("atom without assigned truth value");
      return it->second;
    }
    case Formula::Kind::Not:
      return !eval_propositional(f.child(), valuation);
    case Formula::Kind::And:
      return eval_propositional(f.child(0), valuation) && eval_propositional(f.child(1), valuation);
    case Formula::Kind::Or:
      return eval_propositional(f.child(0), valuation) || eval_propositional(f.child(1), valuation);
    case Formula::Kind::Implies:
      return !eval_propositional(f.child(0), valuation) || eval_propositional(f.child(1), valuation);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      throw NotQuantifierFreeError("eval_propositional requires a quantifier-free formula");
  }
  throw Error("unreachable");
}

namespace {
void collect_atoms_rec(const Formula& f, std::vector<AtomKey>& out) {
  if (f.is_eq()) {
    out.push_back(AtomKey{f.lhs(), f.rhs()});
    return;
  }
  for (size_t i = 0; i < f.child_count(); ++i) collect_atoms_rec(f.child(i), out);
}
}  // namespace

std::vector<AtomKey> collect_atoms(const Formula& f) {
  std::vector<AtomKey> atoms;
  collect_atoms_rec(f, atoms);
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end(),
                          [](const AtomKey& a, const AtomKey& b) { return !(a < b) && !(b < a); }),
              atoms.end());
  return atoms;
}

}  // namespace opstat
