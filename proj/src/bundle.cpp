#include "opstat/bundle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace opstat {

namespace {

struct PolyGrammar {
  const std::vector<std::string>& names;
  std::map<std::string, Indet> index;

  explicit PolyGrammar(const std::vector<std::string>& ns) : names(ns) {
    for (size_t i = 0; i < ns.size(); ++i) index.emplace(ns[i], static_cast<Indet>(i));
  }

  Word parse_word(const std::string& s, int line) const {
    if (s == "1") return {};
    Word w;
    size_t start = 0;
    while (start <= s.size()) {
      size_t star = s.find('*', start);
      std::string name = s.substr(start, star == std::string::npos ? star : star - start);
      auto it = index.find(name);
      if (it == index.end()) throw ParseError("unknown indeterminate '" + name + "'", line, 1);
      w.push_back(it->second);
      if (star == std::string::npos) break;
      start = star + 1;
    }
    return w;
  }

  NCPolynomial parse_poly(const std::string& s, int line) const {
    NCPolynomial p;
    if (s == "0") return p;
    size_t i = 0;
    int sign = 1;
    auto skip_ws = [&]() {
      while (i < s.size() && s[i] == ' ') ++i;
    };
    skip_ws();
    if (i < s.size() && s[i] == '-') {
      sign = -1;
      ++i;
      skip_ws();
    }
    while (i < s.size()) {
      size_t j = i;
      while (j < s.size() && s[j] != ' ') ++j;
      std::string term = s.substr(i, j - i);
      // term := digits | digits '*' word | word
      Coeff coeff = 1;
      std::string wordpart = term;
      size_t digits = 0;
      while (digits < term.size() && std::isdigit(static_cast<unsigned char>(term[digits]))) {
        ++digits;
      }
      if (digits > 0 && (digits == term.size() || term[digits] == '*')) {
        coeff = Coeff(term.substr(0, digits));
        wordpart = digits == term.size() ? "1" : term.substr(digits + 1);
      }
      p.add_term(parse_word(wordpart, line), sign * coeff);
      i = j;
      skip_ws();
      if (i >= s.size()) break;
      if (s[i] == '+') {
        sign = 1;
      } else if (s[i] == '-') {
        sign = -1;
      } else {
        throw ParseError("expected '+' or '-' in polynomial", line, static_cast<int>(i + 1));
      }
      ++i;
      skip_ws();
    }
    return p;
  }
};

}  // namespace

std::string render_certificate(const MembershipCertificate& cert,
                               const std::vector<std::string>& names) {
  std::ostringstream out;
  out << render_poly(cert.target, names) << " = ";
  if (cert.summands.empty()) {
    out << "0";
    return out.str();
  }
  for (size_t i = 0; i < cert.summands.size(); ++i) {
    const CertSummand& s = cert.summands[i];
    if (i) out << " + ";
    out << "(" << s.coeff.str() << ")*[" << render_word(s.left, names) << "]*g" << s.gen << "*["
        << render_word(s.right, names) << "]";
  }
  return out.str();
}

Bundle make_bundle(const ProofTrace& trace, const Signature& sig) {
  Bundle b;
  b.indet_names = trace.indet_names;
  std::map<NCPolynomial, uint32_t> gen_index;
  for (const ClauseIdealisation& rec : trace.result.clauses) {
    if (rec.verdict != Verdict3::True || !rec.certificate) continue;
    BundleClause bc;
    bc.text = render_clause(sig, rec.clause);
    for (const NCPolynomial& g : rec.generators) {
      auto it = gen_index.find(g);
      if (it == gen_index.end()) {
        it = gen_index.emplace(g, static_cast<uint32_t>(b.generators.size())).first;
        b.generators.push_back(g);
      }
      bc.gen_refs.push_back(it->second);
    }
    bc.cert = *rec.certificate;
    b.clauses.push_back(std::move(bc));
  }
  return b;
}

std::string write_bundle(const Bundle& b) {
  std::ostringstream out;
  out << "opstat-certificate-bundle v1\n";
  out << "indeterminates " << b.indet_names.size() << "\n";
  for (const std::string& n : b.indet_names) out << n << "\n";
  out << "order deglex";
  for (const std::string& n : b.elim_names) out << " " << n;
  out << "\n";
  out << "generators " << b.generators.size() << "\n";
  for (const NCPolynomial& g : b.generators) out << render_poly(g, b.indet_names) << "\n";
  out << "clauses " << b.clauses.size() << "\n";
  for (const BundleClause& c : b.clauses) {
    out << "clause " << c.text << "\n";
    out << "gens";
    for (uint32_t r : c.gen_refs) out << " " << r;
    out << "\n";
    out << "target " << render_poly(c.cert.target, b.indet_names) << "\n";
    out << "summands " << c.cert.summands.size() << "\n";
    for (const CertSummand& s : c.cert.summands) {
      out << s.coeff.str() << " " << render_word(s.left, b.indet_names) << " " << s.gen << " "
          << render_word(s.right, b.indet_names) << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

Bundle parse_bundle(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw ParseError("unexpected end of bundle", lineno, 1);
    ++lineno;
    return line;
  };
  auto expect_prefix = [&](const std::string& prefix) {
    next_line();
    if (line.rfind(prefix, 0) != 0) {
      throw ParseError("expected '" + prefix + "'", lineno, 1);
    }
    return line.size() > prefix.size() ? line.substr(prefix.size() + 1) : std::string();
  };

  Bundle b;
  if (next_line() != "opstat-certificate-bundle v1") {
    throw ParseError("not a certificate bundle", lineno, 1);
  }
  size_t n = std::stoul(expect_prefix("indeterminates"));
  for (size_t i = 0; i < n; ++i) b.indet_names.push_back(next_line());
  {
    std::string rest = expect_prefix("order deglex");
    std::istringstream os(rest);
    std::string name;
    while (os >> name) b.elim_names.push_back(name);
  }
  PolyGrammar grammar(b.indet_names);
  size_t m = std::stoul(expect_prefix("generators"));
  for (size_t i = 0; i < m; ++i) b.generators.push_back(grammar.parse_poly(next_line(), lineno));
  size_t k = std::stoul(expect_prefix("clauses"));
  for (size_t i = 0; i < k; ++i) {
    BundleClause c;
    c.text = expect_prefix("clause");
    {
      std::istringstream gs(expect_prefix("gens"));
      uint32_t r;
      while (gs >> r) {
        if (r >= b.generators.size()) throw ParseError("generator reference out of range", lineno, 1);
        c.gen_refs.push_back(r);
      }
    }
    c.cert.target = grammar.parse_poly(expect_prefix("target"), lineno);
    size_t s = std::stoul(expect_prefix("summands"));
    for (size_t q = 0; q < s; ++q) {
      std::istringstream ss(next_line());
      std::string coeff, left, right;
      uint32_t gen;
      if (!(ss >> coeff >> left >> gen >> right)) {
        throw ParseError("malformed summand", lineno, 1);
      }
      CertSummand summand;
      summand.coeff = Coeff(coeff);
      summand.left = grammar.parse_word(left, lineno);
      summand.gen = gen;
      summand.right = grammar.parse_word(right, lineno);
      c.cert.summands.push_back(std::move(summand));
    }
    b.clauses.push_back(std::move(c));
  }
  if (next_line() != "end") throw ParseError("expected 'end'", lineno, 1);
  return b;
}

bool check_bundle(const Bundle& b) {
  for (const BundleClause& c : b.clauses) {
    std::vector<NCPolynomial> gens;
    gens.reserve(c.gen_refs.size());
    for (uint32_t r : c.gen_refs) {
      if (r >= b.generators.size()) return false;
      gens.push_back(b.generators[r]);
    }
    try {
      if (expand_certificate(c.cert, gens) != c.cert.target) return false;
    } catch (const IndexOutOfRangeError&) {
      return false;
    }
  }
  return true;
}

}  // namespace opstat
