#include "opstat/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace opstat {

namespace {

struct Token {
  enum class Kind : uint8_t { Ident, Zero, Punct, End };
  Kind kind;
  std::string text;
  int line, col;
};

struct AmbiguousZero {};

class Lexer {
public:
  explicit Lexer(const std::string& text) {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Token::Kind k, std::string s, int l, int c) {
      tokens_.push_back(Token{k, std::move(s), l, c});
    };
    while (i < text.size()) {
      char ch = text[i];
      if (ch == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++col;
        ++i;
        continue;
      }
      if (ch == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
        continue;
      }
      int tl = line, tc = col;
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        size_t j = i;
        while (j < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
          ++j;
        }
        push(Token::Kind::Ident, text.substr(i, j - i), tl, tc);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (ch == '0') {
        push(Token::Kind::Zero, "0", tl, tc);
        ++col;
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        push(Token::Kind::Ident, text.substr(i, j - i), tl, tc);  // option values
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (ch == '$') throw ParseError("'$' is reserved for generated names", tl, tc);
      auto two = text.substr(i, 2);
      if (two == "->" || two == "=>" || two == "!=") {
        push(Token::Kind::Punct, two, tl, tc);
        col += 2;
        i += 2;
        continue;
      }
      static const std::string singles = ";:,.()[]=!&|+-*";
      if (singles.find(ch) != std::string::npos) {
        push(Token::Kind::Punct, std::string(1, ch), tl, tc);
        ++col;
        ++i;
        continue;
      }
      throw ParseError(std::string("unexpected character '") + ch + "'", tl, tc);
    }
    tokens_.push_back(Token{Token::Kind::End, "", line, col});
  }
  const std::vector<Token>& tokens() const { return tokens_; }

private:
  std::vector<Token> tokens_;
};

const std::vector<std::string> kKeywords = {"obj",   "const", "fun",    "rule",  "assume",
                                            "claim", "hint",  "option", "forall", "exists"};

Term resolve_impl(const Signature& sig, const std::map<std::string, Term>& env,
                  const SurfaceTerm& st, std::optional<Sort> expect);

class Parser {
public:
  explicit Parser(const std::string& text) : lexer_(text), toks_(lexer_.tokens()) {}

  ProblemFile parse() {
    ProblemFile p;
    while (!at_end()) statement(p);
    return p;
  }

private:
  Lexer lexer_;
  const std::vector<Token>& toks_;
  size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  bool at_end() const { return cur().kind == Token::Kind::End; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }
  bool is_punct(const std::string& s) const {
    return cur().kind == Token::Kind::Punct && cur().text == s;
  }
  bool is_ident(const std::string& s) const {
    return cur().kind == Token::Kind::Ident && cur().text == s;
  }
  void expect_punct(const std::string& s) {
    if (!is_punct(s)) fail("expected '" + s + "'");
    ++pos_;
  }
  std::string expect_ident() {
    if (cur().kind != Token::Kind::Ident) fail("expected identifier");
    std::string s = cur().text;
    ++pos_;
    return s;
  }
  std::string expect_name() {
    std::string s = expect_ident();
    if (std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end()) {
      fail("'" + s + "' is a keyword");
    }
    if (std::isdigit(static_cast<unsigned char>(s[0]))) fail("expected identifier");
    return s;
  }

  Sort parse_sort(ProblemFile& p) {
    expect_punct("(");
    std::string u = expect_name();
    expect_punct(",");
    std::string v = expect_name();
    expect_punct(")");
    auto ou = p.sig.find_object(u);
    auto ov = p.sig.find_object(v);
    if (!ou) fail("unknown object symbol '" + u + "'");
    if (!ov) fail("unknown object symbol '" + v + "'");
    return Sort{*ou, *ov};
  }

  void statement(ProblemFile& p) {
    if (cur().kind != Token::Kind::Ident) fail("expected statement keyword");
    std::string kw = cur().text;
    ++pos_;
    try {
      if (kw == "obj") {
        do {
          p.sig.add_object(expect_name());
        } while (cur().kind == Token::Kind::Ident);
      } else if (kw == "const") {
        std::string name = expect_name();
        expect_punct(":");
        std::string u = expect_name();
        expect_punct("->");
        std::string v = expect_name();
        auto ou = p.sig.find_object(u);
        auto ov = p.sig.find_object(v);
        if (!ou || !ov) fail("unknown object symbol in constant declaration");
        p.sig.add_constant(name, Sort{*ou, *ov});
      } else if (kw == "fun") {
        std::string name = expect_name();
        expect_punct(":");
        FunctionSort fs;
        fs.args.push_back(parse_sort(p));
        while (is_ident("x")) {
          ++pos_;
          fs.args.push_back(parse_sort(p));
        }
        expect_punct("->");
        fs.result = parse_sort(p);
        p.sig.add_function(name, std::move(fs));
      } else if (kw == "rule") {
        RewriteRule r;
        r.lhs = parse_surface_term();
        expect_punct("=>");
        r.rhs = parse_surface_term();
        validate_rule(p.sig, r);
        p.rules.push_back(std::move(r));
      } else if (kw == "assume") {
        p.assumptions.push_back(parse_formula(p));
      } else if (kw == "claim") {
        if (!p.claim.null()) fail("claim declared more than once");
        p.claim = parse_formula(p);
      } else if (kw == "hint") {
        HintBlock h;
        for (;;) {
          std::string var = expect_name();
          expect_punct("->");
          h.bindings.emplace_back(var, parse_surface_term());
          if (!is_punct(",")) break;
          ++pos_;
        }
        p.hints.push_back(std::move(h));
      } else if (kw == "option") {
        std::string name = expect_ident();
        std::string value = cur().kind == Token::Kind::Zero ? "0" : expect_ident();
        if (value == "0") ++pos_;
        p.options.emplace_back(name, value);
      } else {
        throw ParseError("unknown statement '" + kw + "'", cur().line, cur().col);
      }
    } catch (const UnknownSymbolError& e) {
      fail(e.what());
    } catch (const SortError& e) {
      fail(e.what());
    }
    expect_punct(";");
  }

  // ---- surface terms (used by rule and hint statements) ----

  SurfaceTerm parse_surface_term() { return surface_sum(); }

  SurfaceTerm surface_sum() {
    SurfaceTerm lhs = surface_product();
    while (is_punct("+") || is_punct("-")) {
      bool plus = cur().text == "+";
      int l = cur().line, c = cur().col;
      ++pos_;
      SurfaceTerm rhs = surface_product();
      if (!plus) {
        SurfaceTerm neg;
        neg.kind = SurfaceTerm::Kind::Apply;
        neg.name = "-";
        neg.line = l;
        neg.col = c;
        neg.args.push_back(std::move(rhs));
        rhs = std::move(neg);
      }
      SurfaceTerm sum;
      sum.kind = SurfaceTerm::Kind::Apply;
      sum.name = "+";
      sum.line = l;
      sum.col = c;
      sum.args.push_back(std::move(lhs));
      sum.args.push_back(std::move(rhs));
      lhs = std::move(sum);
    }
    return lhs;
  }

  SurfaceTerm surface_product() {
    SurfaceTerm lhs = surface_unary();
    while (is_punct("*")) {
      int l = cur().line, c = cur().col;
      ++pos_;
      SurfaceTerm rhs = surface_unary();
      SurfaceTerm prod;
      prod.kind = SurfaceTerm::Kind::Apply;
      prod.name = "*";
      prod.line = l;
      prod.col = c;
      prod.args.push_back(std::move(lhs));
      prod.args.push_back(std::move(rhs));
      lhs = std::move(prod);
    }
    return lhs;
  }

  SurfaceTerm surface_unary() {
    if (is_punct("-")) {
      int l = cur().line, c = cur().col;
      ++pos_;
      SurfaceTerm neg;
      neg.kind = SurfaceTerm::Kind::Apply;
      neg.name = "-";
      neg.line = l;
      neg.col = c;
      // unary minus binds looser than *: -a*b is -(a*b)
      neg.args.push_back(surface_product());
      return neg;
    }
    return surface_primary();
  }

  SurfaceTerm surface_primary() {
    SurfaceTerm t;
    t.line = cur().line;
    t.col = cur().col;
    if (is_punct("(")) {
      ++pos_;
      t = parse_surface_term();
      expect_punct(")");
      return t;
    }
    if (cur().kind == Token::Kind::Zero) {
      ++pos_;
      t.kind = SurfaceTerm::Kind::Zero;
      if (is_punct("[")) {
        ++pos_;
        std::string u = expect_name();
        expect_punct(",");
        std::string v = expect_name();
        expect_punct("]");
        t.zero_sort = std::make_pair(u, v);
      }
      return t;
    }
    std::string name = expect_name();
    if (is_punct("(")) {
      ++pos_;
      t.kind = SurfaceTerm::Kind::Apply;
      t.name = name;
      for (;;) {
        t.args.push_back(parse_surface_term());
        if (is_punct(",")) {
          ++pos_;
          continue;
        }
        break;
      }
      expect_punct(")");
      return t;
    }
    t.kind = SurfaceTerm::Kind::Ident;
    t.name = name;
    return t;
  }

  // ---- formulas ----

  using Scope = std::map<std::string, Term>;

  Formula parse_formula(ProblemFile& p) {
    Scope scope;
    return formula_impl(p, scope);
  }

  Formula formula_impl(ProblemFile& p, Scope& scope) {
    if (is_ident("forall") || is_ident("exists")) {
      bool universal = cur().text == "forall";
      ++pos_;
      std::vector<VarId> vars;
      std::vector<std::pair<std::string, Term>> shadowed;
      for (;;) {
        std::string name = expect_name();
        expect_punct(":");
        Sort s = parse_sort(p);
        VarId v;
        if (auto existing = p.sig.find_variable(name)) {
          if (p.sig.variable(*existing).sort != s) {
            fail("variable '" + name + "' was already used at a different sort");
          }
          v = *existing;
        } else {
          if (p.sig.find_constant(name) || p.sig.find_object(name) ||
              !p.sig.find_functions(name).empty()) {
            fail("identifier '" + name + "' is already declared");
          }
          v = p.sig.add_variable(name, s);
        }
        vars.push_back(v);
        auto it = scope.find(name);
        if (it != scope.end()) shadowed.emplace_back(name, it->second);
        scope[name] = mk_var(p.sig, v);
        if (is_punct(",")) {
          ++pos_;
          continue;
        }
        break;
      }
      expect_punct(".");
      Formula body = formula_impl(p, scope);
      for (size_t i = vars.size(); i-- > 0;) {
        body = universal ? mk_forall(p.sig, vars[i], std::move(body))
                         : mk_exists(p.sig, vars[i], std::move(body));
        scope.erase(p.sig.variable(vars[i]).name);
      }
      for (auto& [n, t] : shadowed) scope[n] = t;
      return body;
    }
    Formula lhs = formula_or(p, scope);
    if (is_punct("->")) {
      ++pos_;
      Formula rhs = formula_impl(p, scope);
      return mk_implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula formula_or(ProblemFile& p, Scope& scope) {
    Formula lhs = formula_and(p, scope);
    while (is_punct("|")) {
      ++pos_;
      lhs = mk_or(std::move(lhs), formula_and(p, scope));
    }
    return lhs;
  }

  Formula formula_and(ProblemFile& p, Scope& scope) {
    Formula lhs = formula_not(p, scope);
    while (is_punct("&")) {
      ++pos_;
      lhs = mk_and(std::move(lhs), formula_not(p, scope));
    }
    return lhs;
  }

  Formula formula_not(ProblemFile& p, Scope& scope) {
    if (is_punct("!")) {
      ++pos_;
      return mk_not(formula_not(p, scope));
    }
    return formula_atom(p, scope);
  }

  Formula formula_atom(ProblemFile& p, Scope& scope) {
    if (is_punct("(")) {
      // Could be a parenthesised formula or a parenthesised term starting an
      // equation; try the equation first and rewind on failure.
      size_t mark = pos_;
      try {
        return equation(p, scope);
      } catch (const ParseError&) {
        pos_ = mark;
      }
      expect_punct("(");
      Formula f = formula_impl(p, scope);
      expect_punct(")");
      return f;
    }
    if (is_ident("forall") || is_ident("exists")) return formula_impl(p, scope);
    return equation(p, scope);
  }

  Formula equation(ProblemFile& p, Scope& scope) {
    SurfaceTerm ls = parse_surface_term();
    bool negated;
    if (is_punct("=")) {
      negated = false;
    } else if (is_punct("!=")) {
      negated = true;
    } else {
      fail("expected '=' or '!='");
    }
    int l = cur().line, c = cur().col;
    ++pos_;
    SurfaceTerm rs = parse_surface_term();
    Term lt, rt;
    try {
      try {
        lt = resolve_impl(p.sig, scope, ls, std::nullopt);
        rt = resolve_impl(p.sig, scope, rs, lt.sort());
      } catch (const AmbiguousZero&) {
        rt = resolve_impl(p.sig, scope, rs, std::nullopt);
        lt = resolve_impl(p.sig, scope, ls, rt.sort());
      }
    } catch (const AmbiguousZero&) {
      throw ParseError("ambiguous zero constant; annotate as 0[u,v]", l, c);
    } catch (const Error& e) {
      throw ParseError(e.what(), l, c);
    }
    Formula eq = mk_eq(lt, rt);
    return negated ? mk_not(std::move(eq)) : eq;
  }
};

Term resolve_impl(const Signature& sig, const std::map<std::string, Term>& env,
                  const SurfaceTerm& st, std::optional<Sort> expect);

Term check_expect(const Signature& sig, Term t, std::optional<Sort> expect) {
  if (expect && t.sort() != *expect) {
    throw SortError("term '" + render_term(sig, t) + "' has sort (" +
                    sig.object_name(t.sort().src) + "," + sig.object_name(t.sort().tgt) +
                    "), expected (" + sig.object_name(expect->src) + "," +
                    sig.object_name(expect->tgt) + ")");
  }
  return t;
}

Term resolve_impl(const Signature& sig, const std::map<std::string, Term>& env,
                  const SurfaceTerm& st, std::optional<Sort> expect) {
  switch (st.kind) {
    case SurfaceTerm::Kind::Ident: {
      auto it = env.find(st.name);
      if (it != env.end()) return check_expect(sig, it->second, expect);
      if (auto c = sig.find_constant(st.name)) return check_expect(sig, mk_const(sig, *c), expect);
      throw UnknownSymbolError("unknown symbol '" + st.name + "'");
    }
    case SurfaceTerm::Kind::Zero: {
      if (st.zero_sort) {
        auto u = sig.find_object(st.zero_sort->first);
        auto v = sig.find_object(st.zero_sort->second);
        if (!u || !v) throw UnknownSymbolError("unknown object symbol in zero annotation");
        return check_expect(sig, mk_zero(sig, Sort{*u, *v}), expect);
      }
      if (!expect) throw AmbiguousZero{};
      return mk_zero(sig, *expect);
    }
    case SurfaceTerm::Kind::Apply: {
      if (st.name == "+") {
        Term a, b;
        try {
          a = resolve_impl(sig, env, st.args[0], expect);
          b = resolve_impl(sig, env, st.args[1], a.sort());
        } catch (const AmbiguousZero&) {
          b = resolve_impl(sig, env, st.args[1], expect);
          a = resolve_impl(sig, env, st.args[0], b.sort());
        }
        return mk_add(sig, a, b);
      }
      if (st.name == "-") {
        return mk_neg(sig, resolve_impl(sig, env, st.args[0], expect));
      }
      if (st.name == "*") {
        Term a = resolve_impl(sig, env, st.args[0], std::nullopt);
        Term b = resolve_impl(sig, env, st.args[1], std::nullopt);
        return check_expect(sig, mk_mul(sig, a, b), expect);
      }
      std::vector<Term> args;
      std::vector<Sort> sorts;
      for (const SurfaceTerm& a : st.args) {
        args.push_back(resolve_impl(sig, env, a, std::nullopt));
        sorts.push_back(args.back().sort());
      }
      auto f = sig.resolve_function(st.name, sorts);
      if (!f) {
        throw UnknownSymbolError("no declaration of '" + st.name +
                                 "' matches these argument sorts");
      }
      return check_expect(sig, mk_apply(sig, *f, std::move(args)), expect);
    }
  }
  throw Error("unreachable");
}

}  // namespace

Term resolve_surface(const Signature& sig, const std::map<std::string, Term>& env,
                     const SurfaceTerm& st, std::optional<Sort> expect) {
  try {
    return resolve_impl(sig, env, st, expect);
  } catch (const AmbiguousZero&) {
    throw SortError("ambiguous zero constant; annotate as 0[u,v]");
  }
}

ProblemFile parse_problem(const std::string& text) {
  Parser parser(text);
  return parser.parse();
}

std::string render_problem(const ProblemFile& p) {
  std::ostringstream out;
  const Signature& sig = p.sig;
  for (uint32_t i = 0; i < sig.object_count(); ++i) {
    out << "obj " << sig.object_name(ObjectId{i}) << ";\n";
  }
  for (uint32_t i = 0; i < sig.constant_count(); ++i) {
    const ConstInfo& c = sig.constant(ConstId{i});
    if (c.is_zero || c.name[0] == '$') continue;
    out << "const " << c.name << " : " << sig.object_name(c.sort.src) << " -> "
        << sig.object_name(c.sort.tgt) << ";\n";
  }
  auto sort_str = [&](Sort s) {
    return "(" + sig.object_name(s.src) + "," + sig.object_name(s.tgt) + ")";
  };
  for (uint32_t i = 0; i < sig.function_count(); ++i) {
    const FuncInfo& f = sig.function(FuncId{i});
    if (f.arith != ArithKind::None || f.name[0] == '$') continue;
    out << "fun " << f.name << " : ";
    for (size_t a = 0; a < f.sort.args.size(); ++a) {
      if (a) out << " x ";
      out << sort_str(f.sort.args[a]);
    }
    out << " -> " << sort_str(f.sort.result) << ";\n";
  }
  for (const RewriteRule& r : p.rules) {
    out << "rule " << render_surface(r.lhs) << " => " << render_surface(r.rhs) << ";\n";
  }
  for (const auto& [k, v] : p.options) out << "option " << k << " " << v << ";\n";
  for (const Formula& a : p.assumptions) out << "assume " << render_formula(sig, a) << ";\n";
  if (!p.claim.null()) out << "claim " << render_formula(sig, p.claim) << ";\n";
  for (const HintBlock& h : p.hints) {
    out << "hint ";
    for (size_t i = 0; i < h.bindings.size(); ++i) {
      if (i) out << ", ";
      out << h.bindings[i].first << " -> " << render_surface(h.bindings[i].second);
    }
    out << ";\n";
  }
  return out.str();
}

}  // namespace opstat
