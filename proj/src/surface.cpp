#include "opstat/surface.hpp"

#include <map>
#include <sstream>

namespace opstat {

std::string render_surface(const SurfaceTerm& t) {
  std::ostringstream out;
  switch (t.kind) {
    case SurfaceTerm::Kind::Ident:
      out << t.name;
      break;
    case SurfaceTerm::Kind::Zero:
      out << "0";
      if (t.zero_sort) out << "[" << t.zero_sort->first << "," << t.zero_sort->second << "]";
      break;
    case SurfaceTerm::Kind::Apply:
      if (t.name == "+" || t.name == "*") {
        out << "(" << render_surface(t.args[0]) << " " << t.name << " "
            << render_surface(t.args[1]) << ")";
      } else if (t.name == "-") {
        out << "(-" << render_surface(t.args[0]) << ")";
      } else {
        out << t.name << "(";
        for (size_t i = 0; i < t.args.size(); ++i) {
          if (i) out << ", ";
          out << render_surface(t.args[i]);
        }
        out << ")";
      }
      break;
  }
  return out.str();
}

namespace {

bool is_pattern_var(const Signature& sig, const SurfaceTerm& t) {
  return t.kind == SurfaceTerm::Kind::Ident && !sig.find_constant(t.name) &&
         !sig.find_variable(t.name);
}

void collect_pattern_vars(const Signature& sig, const SurfaceTerm& t,
                          std::vector<std::string>& out) {
  if (is_pattern_var(sig, t)) {
    out.push_back(t.name);
    return;
  }
  for (const SurfaceTerm& a : t.args) collect_pattern_vars(sig, a, out);
}

using Bindings = std::map<std::string, Term>;

bool match_pattern(const Signature& sig, const SurfaceTerm& pat, const Term& t, Bindings& b) {
  switch (pat.kind) {
    case SurfaceTerm::Kind::Ident: {
      if (auto c = sig.find_constant(pat.name)) {
        return t.is_const() && t.constant() == *c;
      }
      if (auto v = sig.find_variable(pat.name)) {
        return t.is_var() && t.var() == *v;
      }
      auto it = b.find(pat.name);
      if (it != b.end()) return equal_terms(it->second, t);
      b.emplace(pat.name, t);
      return true;
    }
    case SurfaceTerm::Kind::Zero:
      if (!t.is_const() || !sig.constant(t.constant()).is_zero) return false;
      return true;  // annotated sorts were already resolved when parsing into formulas
    case SurfaceTerm::Kind::Apply: {
      if (!t.is_apply()) return false;
      if (sig.function(t.func()).name != pat.name) return false;
      if (t.args().size() != pat.args.size()) return false;
      for (size_t i = 0; i < pat.args.size(); ++i) {
        if (!match_pattern(sig, pat.args[i], t.args()[i], b)) return false;
      }
      return true;
    }
  }
  return false;
}

// Builds the instantiated right side; nullopt when no overload matches the
// argument sorts that occur.
std::optional<Term> build_pattern(const Signature& sig, const SurfaceTerm& pat,
                                  const Bindings& b) {
  switch (pat.kind) {
    case SurfaceTerm::Kind::Ident: {
      if (auto c = sig.find_constant(pat.name)) return mk_const(sig, *c);
      if (auto v = sig.find_variable(pat.name)) return mk_var(sig, *v);
      auto it = b.find(pat.name);
      if (it == b.end()) return std::nullopt;
      return it->second;
    }
    case SurfaceTerm::Kind::Zero: {
      if (!pat.zero_sort) return std::nullopt;
      auto u = sig.find_object(pat.zero_sort->first);
      auto v = sig.find_object(pat.zero_sort->second);
      if (!u || !v) return std::nullopt;
      return mk_zero(sig, Sort{*u, *v});
    }
    case SurfaceTerm::Kind::Apply: {
      std::vector<Term> args;
      args.reserve(pat.args.size());
      for (const SurfaceTerm& a : pat.args) {
        auto t = build_pattern(sig, a, b);
        if (!t) return std::nullopt;
        args.push_back(std::move(*t));
      }
      try {
        if (pat.name == "+") {
          if (args.size() != 2) return std::nullopt;
          return mk_add(sig, args[0], args[1]);
        }
        if (pat.name == "-") {
          if (args.size() != 1) return std::nullopt;
          return mk_neg(sig, args[0]);
        }
        if (pat.name == "*") {
          if (args.size() != 2) return std::nullopt;
          return mk_mul(sig, args[0], args[1]);
        }
        std::vector<Sort> sorts;
        for (const Term& a : args) sorts.push_back(a.sort());
        auto f = sig.resolve_function(pat.name, sorts);
        if (!f) return std::nullopt;
        return mk_apply(sig, *f, std::move(args));
      } catch (const Error&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

struct RewriteEngine {
  const Signature& sig;
  const std::vector<RewriteRule>& rules;
  uint64_t cap;
  uint64_t steps = 0;

  Term normalize(Term t) {
    for (;;) {
      if (t.is_apply()) {
        bool changed = false;
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) {
          Term na = normalize(a);
          if (!na.same_node(a)) changed = true;
          args.push_back(std::move(na));
        }
        if (changed) t = mk_apply(sig, t.func(), std::move(args));
      }
      bool rewritten = false;
      for (const RewriteRule& r : rules) {
        Bindings b;
        if (!match_pattern(sig, r.lhs, t, b)) continue;
        auto replacement = build_pattern(sig, r.rhs, b);
        if (!replacement) continue;
        if (++steps > cap) {
          throw RewriteBudgetError("rewrite step cap exceeded (" + std::to_string(cap) + ")");
        }
        t = std::move(*replacement);
        rewritten = true;
        break;
      }
      if (!rewritten) return t;
    }
  }
};

}  // namespace

void validate_rule(const Signature& sig, const RewriteRule& rule) {
  if (is_pattern_var(sig, rule.lhs)) {
    throw InputError("rewrite rule left side must not be a bare variable");
  }
  std::vector<std::string> lv, rv;
  collect_pattern_vars(sig, rule.lhs, lv);
  collect_pattern_vars(sig, rule.rhs, rv);
  for (const std::string& v : rv) {
    if (std::find(lv.begin(), lv.end(), v) == lv.end()) {
      throw InputError("rewrite rule right side uses unbound variable '" + v + "'");
    }
  }
}

Term apply_universal_rules(const Signature& sig, const Term& t,
                           const std::vector<RewriteRule>& rules, uint64_t step_cap) {
  if (rules.empty()) return t;
  RewriteEngine eng{sig, rules, step_cap};
  return eng.normalize(t);
}

Formula apply_universal_rules(const Signature& sig, const Formula& f,
                              const std::vector<RewriteRule>& rules, uint64_t step_cap) {
  if (rules.empty()) return f;
  RewriteEngine eng{sig, rules, step_cap};
  struct Walker {
    RewriteEngine& eng;
    Formula walk(const Formula& f) {
      switch (f.kind()) {
        case Formula::Kind::Eq:
          return mk_eq(eng.normalize(f.lhs()), eng.normalize(f.rhs()));
        case Formula::Kind::Not:
          return mk_not(walk(f.child()));
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
          return mk_binary(f.kind(), walk(f.child(0)), walk(f.child(1)));
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
          return mk_quant(f.kind(), f.var(), walk(f.child()));
      }
      throw Error("unreachable");
    }
  } walker{eng};
  return walker.walk(f);
}

namespace {

// Companion of a formula under f: the same statement with every positive
// identity p = q replaced by f(p) = f(q); null when nothing matches.
Formula companion(const Signature& sig, const Formula& f, const std::string& fname) {
  switch (f.kind()) {
    case Formula::Kind::Eq: {
      auto fn = sig.resolve_function(fname, {f.lhs().sort()});
      if (!fn) return Formula();
      return mk_eq(mk_apply(sig, *fn, {f.lhs()}), mk_apply(sig, *fn, {f.rhs()}));
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      Formula a = companion(sig, f.child(0), fname);
      Formula b = companion(sig, f.child(1), fname);
      if (a.null()) return b;
      if (b.null()) return a;
      return mk_binary(f.kind(), std::move(a), std::move(b));
    }
    case Formula::Kind::Implies: {
      Formula c = companion(sig, f.child(1), fname);
      if (c.null()) return Formula();
      return mk_implies(f.child(0), std::move(c));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Formula c = companion(sig, f.child(), fname);
      if (c.null()) return Formula();
      return mk_quant(f.kind(), f.var(), std::move(c));
    }
    case Formula::Kind::Not:
      return Formula();
  }
  return Formula();
}

}  // namespace

Formula extend_with_function(const Signature& sig, const Formula& f, const std::string& fname) {
  bool any_unary = false;
  for (FuncId fn : sig.find_functions(fname)) {
    any_unary |= sig.function(fn).sort.args.size() == 1;
  }
  if (!any_unary) {
    throw InputError("extension symbol '" + fname + "' has no unary declaration");
  }
  Formula c = companion(sig, f, fname);
  return c.null() ? f : mk_and(f, std::move(c));
}

}  // namespace opstat
