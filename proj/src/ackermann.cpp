#include "opstat/ackermann.hpp"

namespace opstat {

namespace {

struct Reducer {
  Signature& sig;
  FuncId symbol;
  AckContext* ctx;
  std::vector<AckInstance> table;               // in index order
  std::map<Term, size_t, TermLess> instance_of; // original term -> table index

  // Flatten a term bottom-up; registers instances of `symbol` in post-order,
  // which makes indexing innermost-first.
  Term flatten(const Term& t) {
    if (!t.is_apply()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const Term& a : t.args()) {
      Term fa = flatten(a);
      if (!fa.same_node(a)) changed = true;
      args.push_back(std::move(fa));
    }
    if (t.func() != symbol) {
      return changed ? mk_apply(sig, t.func(), std::move(args)) : t;
    }
    auto it = instance_of.find(t);
    if (it == instance_of.end()) {
      AckInstance inst;
      inst.fn = symbol;
      inst.original = t;
      inst.flat_args = args;
      if (ctx) {
        auto hit = ctx->memo.find(t);
        if (hit != ctx->memo.end()) {
          inst.constant = hit->second;
        } else {
          inst.constant = sig.fresh_constant("a", sig.function(symbol).sort.result);
          ctx->memo.emplace(t, inst.constant);
        }
      } else {
        inst.constant = sig.fresh_constant("a", sig.function(symbol).sort.result);
      }
      it = instance_of.emplace(t, table.size()).first;
      table.push_back(std::move(inst));
    }
    return mk_const(sig, table[it->second].constant);
  }

  Formula flatten_formula(const Formula& f) {
    // left-to-right traversal; sequencing matters for the instance indexing
    switch (f.kind()) {
      case Formula::Kind::Eq: {
        Term l = flatten(f.lhs());
        Term r = flatten(f.rhs());
        return mk_eq(l, r);
      }
      case Formula::Kind::Not:
        return mk_not(flatten_formula(f.child()));
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies: {
        Formula a = flatten_formula(f.child(0));
        Formula b = flatten_formula(f.child(1));
        return mk_binary(f.kind(), std::move(a), std::move(b));
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        throw NotQuantifierFreeError("Ackermann's reduction requires a quantifier-free formula");
    }
    throw Error("unreachable");
  }
};

// First non-arithmetic function symbol in a post-order traversal; post-order
// visits arguments before heads, so the innermost symbol comes first.
std::optional<FuncId> innermost_symbol(const Signature& sig, const Term& t) {
  if (!t.is_apply()) return std::nullopt;
  for (const Term& a : t.args()) {
    if (auto f = innermost_symbol(sig, a)) return f;
  }
  if (!sig.is_arithmetic(t.func())) return t.func();
  return std::nullopt;
}

std::optional<FuncId> innermost_symbol(const Signature& sig, const Formula& f) {
  if (f.is_eq()) {
    if (auto s = innermost_symbol(sig, f.lhs())) return s;
    return innermost_symbol(sig, f.rhs());
  }
  for (size_t i = 0; i < f.child_count(); ++i) {
    if (auto s = innermost_symbol(sig, f.child(i))) return s;
  }
  return std::nullopt;
}

std::vector<Formula> make_fc_units(const Signature& sig, const std::vector<AckInstance>& table,
                                   bool fc_simplify) {
  std::vector<Formula> units;
  for (size_t i = 0; i < table.size(); ++i) {
    for (size_t j = i + 1; j < table.size(); ++j) {
      const AckInstance& a = table[i];
      const AckInstance& b = table[j];
      bool all_reflexive = true;
      for (size_t k = 0; k < a.flat_args.size(); ++k) {
        if (!equal_terms(a.flat_args[k], b.flat_args[k])) {
          all_reflexive = false;
          break;
        }
      }
      Formula conclusion = mk_eq(mk_const(sig, a.constant), mk_const(sig, b.constant));
      if (all_reflexive && fc_simplify) {
        units.push_back(std::move(conclusion));
      } else {
        std::vector<Formula> hyp;
        for (size_t k = 0; k < a.flat_args.size(); ++k) {
          hyp.push_back(mk_eq(a.flat_args[k], b.flat_args[k]));
        }
        units.push_back(mk_implies(mk_conj(std::move(hyp)), std::move(conclusion)));
      }
    }
  }
  return units;
}

}  // namespace

AckermannResult ackermann_reduce(const Signature& sig, const Formula& f, FuncId symbol,
                                 bool fc_simplify, AckContext* ctx) {
  if (!is_quantifier_free(f)) {
    throw NotQuantifierFreeError("Ackermann's reduction requires a quantifier-free formula");
  }
  if (!sig.valid(symbol)) throw UnknownSymbolError("unknown function symbol");
  if (sig.is_arithmetic(symbol)) {
    throw ArithmeticSymbolError("arithmetic symbols must not be removed");
  }

  AckermannResult out;
  out.extended_signature = sig;
  Reducer red{out.extended_signature, symbol, ctx, {}, {}};
  out.flat = red.flatten_formula(f);
  out.table = std::move(red.table);
  out.fc_units = make_fc_units(out.extended_signature, out.table, fc_simplify);
  if (!out.fc_units.empty()) out.fc = mk_conj(out.fc_units);
  out.result = out.fc.null() ? out.flat : mk_implies(out.fc, out.flat);
  return out;
}

AckermannResult ackermann_reduce_all(const Signature& sig, const Formula& f, bool fc_simplify,
                                     AckContext* ctx) {
  if (!is_quantifier_free(f)) {
    throw NotQuantifierFreeError("Ackermann's reduction requires a quantifier-free formula");
  }
  AckermannResult acc;
  acc.extended_signature = sig;
  acc.flat = f;
  // Each round flattens the matrix together with all accumulated FC units,
  // so instances hiding only inside earlier constraints are still found.
  for (;;) {
    std::optional<FuncId> symbol = innermost_symbol(acc.extended_signature, acc.flat);
    for (size_t i = 0; !symbol && i < acc.fc_units.size(); ++i) {
      symbol = innermost_symbol(acc.extended_signature, acc.fc_units[i]);
    }
    if (!symbol) break;
    Reducer red{acc.extended_signature, *symbol, ctx, {}, {}};
    acc.flat = red.flatten_formula(acc.flat);
    for (Formula& u : acc.fc_units) u = red.flatten_formula(u);
    std::vector<Formula> new_units = make_fc_units(acc.extended_signature, red.table, fc_simplify);
    acc.fc_units.insert(acc.fc_units.end(), new_units.begin(), new_units.end());
    for (auto& inst : red.table) acc.table.push_back(std::move(inst));
  }
  if (!acc.fc_units.empty()) acc.fc = mk_conj(acc.fc_units);
  acc.result = acc.fc.null() ? acc.flat : mk_implies(acc.fc, acc.flat);
  return acc;
}

}  // namespace opstat
