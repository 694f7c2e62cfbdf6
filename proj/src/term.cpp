#include "opstat/term.hpp"

#include <sstream>

namespace opstat {

Term mk_var(const Signature& sig, VarId v) {
  if (!sig.valid(v)) throw UnknownSymbolError("unknown variable id");
  auto n = std::make_shared<Term::Node>();
  n->kind = Term::Kind::Variable;
  n->id = v.value;
  n->sort = sig.variable(v).sort;
  n->size = 1;
  return Term(std::move(n));
}

Term mk_const(const Signature& sig, ConstId c) {
  if (!sig.valid(c)) throw UnknownSymbolError("unknown constant id");
  auto n = std::make_shared<Term::Node>();
  n->kind = Term::Kind::Constant;
  n->id = c.value;
  n->sort = sig.constant(c).sort;
  n->size = 1;
  return Term(std::move(n));
}

Term mk_apply(const Signature& sig, FuncId f, std::vector<Term> args) {
  if (!sig.valid(f)) throw UnknownSymbolError("unknown function id");
  const FuncInfo& info = sig.function(f);
  if (info.sort.args.size() != args.size()) {
    throw SortError("function '" + info.name + "' expects " +
                    std::to_string(info.sort.args.size()) + " arguments, got " +
                    std::to_string(args.size()));
  }
  uint32_t size = 1;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i].null()) throw SortError("null argument term");
    if (args[i].sort() != info.sort.args[i]) {
      throw SortError("argument " + std::to_string(i + 1) + " of '" + info.name +
                      "' has the wrong sort");
    }
    size += args[i].size();
  }
  auto n = std::make_shared<Term::Node>();
  n->kind = Term::Kind::Apply;
  n->id = f.value;
  n->sort = info.sort.result;
  n->size = size;
  n->args = std::move(args);
  return Term(std::move(n));
}

Term mk_zero(const Signature& sig, Sort s) { return mk_const(sig, sig.zero(s)); }

Term mk_add(const Signature& sig, const Term& a, const Term& b) {
  if (a.sort() != b.sort()) throw SortError("+ requires equal sorts");
  return mk_apply(sig, sig.add_symbol(a.sort()), {a, b});
}

Term mk_neg(const Signature& sig, const Term& a) {
  return mk_apply(sig, sig.neg_symbol(a.sort()), {a});
}

Term mk_mul(const Signature& sig, const Term& a, const Term& b) {
  return mk_apply(sig, sig.mul_symbol(a.sort(), b.sort()), {a, b});
}

int compare_terms(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  auto ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  uint32_t ia = a.is_var() ? a.var().value : (a.is_const() ? a.constant().value : a.func().value);
  uint32_t ib = b.is_var() ? b.var().value : (b.is_const() ? b.constant().value : b.func().value);
  if (ia != ib) return ia < ib ? -1 : 1;
  if (a.is_apply()) {
    for (size_t i = 0; i < a.args().size(); ++i) {
      int c = compare_terms(a.args()[i], b.args()[i]);
      if (c != 0) return c;
    }
  }
  return 0;
}

bool equal_terms(const Term& a, const Term& b) { return compare_terms(a, b) == 0; }

bool is_ground(const Term& t) {
  if (t.is_var()) return false;
  if (t.is_apply()) {
    for (const Term& a : t.args())
      if (!is_ground(a)) return false;
  }
  return true;
}

bool is_arithmetic(const Signature& sig, const Term& t) {
  if (t.is_apply()) {
    if (!sig.is_arithmetic(t.func())) return false;
    for (const Term& a : t.args())
      if (!is_arithmetic(sig, a)) return false;
  }
  return true;
}

void collect_vars(const Term& t, std::set<VarId>& out) {
  if (t.is_var()) {
    out.insert(t.var());
  } else if (t.is_apply()) {
    for (const Term& a : t.args()) collect_vars(a, out);
  }
}

void check_sorts(const Signature& sig, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (!sig.valid(t.var())) throw UnknownSymbolError("unknown variable in term");
      if (sig.variable(t.var()).sort != t.sort()) throw SortError("variable sort mismatch");
      return;
    case Term::Kind::Constant:
      if (!sig.valid(t.constant())) throw UnknownSymbolError("unknown constant in term");
      if (sig.constant(t.constant()).sort != t.sort()) throw SortError("constant sort mismatch");
      return;
    case Term::Kind::Apply: {
      if (!sig.valid(t.func())) throw UnknownSymbolError("unknown function in term");
      const FuncInfo& info = sig.function(t.func());
      if (info.sort.args.size() != t.args().size()) {
        throw SortError("arity mismatch in subterm " + render_term(sig, t));
      }
      for (size_t i = 0; i < t.args().size(); ++i) {
        if (t.args()[i].sort() != info.sort.args[i]) {
          throw SortError("ill-sorted subterm " + render_term(sig, t) + ": argument " +
                          std::to_string(i + 1) + " has sort (" +
                          sig.object_name(t.args()[i].sort().src) + "," +
                          sig.object_name(t.args()[i].sort().tgt) + "), expected (" +
                          sig.object_name(info.sort.args[i].src) + "," +
                          sig.object_name(info.sort.args[i].tgt) + ")");
        }
        check_sorts(sig, t.args()[i]);
      }
      if (info.sort.result != t.sort()) throw SortError("result sort mismatch");
      return;
    }
  }
}

namespace {

// Rendering precedence: * binds tighter than unary -, which binds tighter
// than +. Sums of a negated operand render with binary '-'.
enum Prec { PrecAdd = 0, PrecNeg = 1, PrecMul = 2, PrecAtom = 3 };

void render(const Signature& sig, const Term& t, std::ostringstream& out, int parent) {
  if (t.is_var()) {
    out << sig.variable(t.var()).name;
    return;
  }
  if (t.is_const()) {
    out << sig.constant(t.constant()).name;
    return;
  }
  const FuncInfo& info = sig.function(t.func());
  switch (info.arith) {
    case ArithKind::Add: {
      if (parent > PrecAdd) out << "(";
      render(sig, t.args()[0], out, PrecAdd);
      const Term& rhs = t.args()[1];
      if (rhs.is_apply() && sig.function(rhs.func()).arith == ArithKind::Neg) {
        out << " - ";
        render(sig, rhs.args()[0], out, PrecNeg + 1);
      } else {
        out << " + ";
        render(sig, rhs, out, PrecAdd + 1);
      }
      if (parent > PrecAdd) out << ")";
      return;
    }
    case ArithKind::Neg:
      if (parent > PrecNeg) out << "(";
      out << "-";
      render(sig, t.args()[0], out, PrecNeg);
      if (parent > PrecNeg) out << ")";
      return;
    case ArithKind::Mul:
      if (parent > PrecMul) out << "(";
      render(sig, t.args()[0], out, PrecMul);
      out << " * ";
      render(sig, t.args()[1], out, PrecMul + 1);
      if (parent > PrecMul) out << ")";
      return;
    case ArithKind::None: {
      out << info.name << "(";
      for (size_t i = 0; i < t.args().size(); ++i) {
        if (i) out << ", ";
        render(sig, t.args()[i], out, PrecAdd);
      }
      out << ")";
      return;
    }
  }
}

}  // namespace

std::string render_term(const Signature& sig, const Term& t) {
  std::ostringstream out;
  render(sig, t, out, PrecAdd);
  return out.str();
}

Term substitute_term(const Signature& sig, const Term& t, const std::map<VarId, Term>& bindings) {
  if (t.is_var()) {
    auto it = bindings.find(t.var());
    if (it == bindings.end()) return t;
    if (it->second.sort() != t.sort()) throw SortError("substitution sort mismatch");
    return it->second;
  }
  if (t.is_const()) return t;
  bool changed = false;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) {
    Term na = substitute_term(sig, a, bindings);
    if (!na.same_node(a)) changed = true;
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return mk_apply(sig, t.func(), std::move(args));
}

}  // namespace opstat
