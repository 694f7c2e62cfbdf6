#include "opstat/ncpoly.hpp"

#include <sstream>

namespace opstat {

Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

std::string render_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::ostringstream out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out << "*";
    out << names.at(w[i]);
  }
  return out.str();
}

NCPolynomial NCPolynomial::monomial(Word w, Coeff c) {
  NCPolynomial p;
  if (c != 0) p.terms_.emplace(std::move(w), std::move(c));
  return p;
}

void NCPolynomial::add_term(const Word& w, const Coeff& c) {
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPolynomial operator-(const NCPolynomial& a) {
  NCPolynomial out;
  for (const auto& [w, c] : a.terms_) out.terms_.emplace(w, -c);
  return out;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      out.add_term(concat(wa, wb), ca * cb);
    }
  }
  return out;
}

NCPolynomial NCPolynomial::scaled(const Coeff& c) const {
  NCPolynomial out;
  if (c == 0) return out;
  for (const auto& [w, k] : terms_) out.terms_.emplace(w, k * c);
  return out;
}

NCPolynomial NCPolynomial::framed(const Word& left, const Word& right) const {
  NCPolynomial out;
  for (const auto& [w, k] : terms_) out.terms_.emplace(concat(left, concat(w, right)), k);
  return out;
}

uint32_t NCPolynomial::degree() const {
  uint32_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max<uint32_t>(d, static_cast<uint32_t>(w.size()));
  return d;
}

NCPolynomial add(const NCPolynomial& a, const NCPolynomial& b) { return a + b; }
NCPolynomial neg(const NCPolynomial& a) { return -a; }
NCPolynomial mul(const NCPolynomial& a, const NCPolynomial& b) { return a * b; }

Indet IndeterminateTable::intern(const Signature& sig, ConstId c) {
  auto it = index_.find(c);
  if (it != index_.end()) return it->second;
  Indet x = static_cast<Indet>(constants_.size());
  constants_.push_back(c);
  names_.push_back(sig.constant(c).name);
  index_.emplace(c, x);
  return x;
}

std::optional<Indet> IndeterminateTable::lookup(ConstId c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NCPolynomial translate_term(const Signature& sig, const Term& t, IndeterminateTable& tbl) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      throw NotGroundError("cannot translate a term with variables");
    case Term::Kind::Constant: {
      const ConstInfo& info = sig.constant(t.constant());
      if (info.is_zero) return NCPolynomial();
      return NCPolynomial::monomial(Word{tbl.intern(sig, t.constant())});
    }
    case Term::Kind::Apply: {
      const FuncInfo& info = sig.function(t.func());
      switch (info.arith) {
        case ArithKind::Add:
          return translate_term(sig, t.args()[0], tbl) + translate_term(sig, t.args()[1], tbl);
        case ArithKind::Neg:
          return -translate_term(sig, t.args()[0], tbl);
        case ArithKind::Mul:
          return translate_term(sig, t.args()[0], tbl) * translate_term(sig, t.args()[1], tbl);
        case ArithKind::None:
          throw NonArithmeticError("cannot translate non-arithmetic symbol '" + info.name + "'");
      }
      throw Error("unreachable");
    }
  }
  throw Error("unreachable");
}

NCPolynomial literal_poly(const Signature& sig, const Term& s, const Term& t,
                          IndeterminateTable& tbl) {
  return translate_term(sig, s, tbl) - translate_term(sig, t, tbl);
}

std::string render_poly(const NCPolynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  // Render longer words first so output reads leading-term-first under the
  // default degree order.
  std::vector<std::pair<Word, Coeff>> ts(p.terms().begin(), p.terms().end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : ts) {
    Coeff a = c < 0 ? Coeff(-c) : c;
    if (first) {
      if (c < 0) out << "- ";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (w.empty()) {
      out << a.str();
    } else if (a == 1) {
      out << render_word(w, names);
    } else {
      out << a.str() << "*" << render_word(w, names);
    }
  }
  return out.str();
}

}  // namespace opstat
