#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opstat/term.hpp"

namespace opstat {

using Coeff = boost::multiprecision::cpp_int;
using Indet = uint32_t;

/// A word over the indeterminate alphabet; the empty word is the monomial 1.
using Word = std::vector<Indet>;

Word concat(const Word& a, const Word& b);
std::string render_word(const Word& w, const std::vector<std::string>& names);

/// Element of the free algebra Z<X>: an integer linear combination of words.
/// Stored as a canonical word-keyed map with no zero coefficients; equality
/// is map equality, independent of any monomial order.
class NCPolynomial {
public:
  NCPolynomial() = default;
  static NCPolynomial monomial(Word w, Coeff c = 1);

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Word, Coeff>& terms() const { return terms_; }

  void add_term(const Word& w, const Coeff& c);

  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);
  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator-(const NCPolynomial& a);
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  NCPolynomial scaled(const Coeff& c) const;
  /// left * this * right with monomial cofactors.
  NCPolynomial framed(const Word& left, const Word& right) const;

  friend bool operator==(const NCPolynomial&, const NCPolynomial&) = default;
  /// Total order for use as a map key; unrelated to monomial orders.
  friend bool operator<(const NCPolynomial& a, const NCPolynomial& b) { return a.terms_ < b.terms_; }

  uint32_t degree() const;  // max word length; 0 for the zero polynomial

private:
  std::map<Word, Coeff> terms_;
};

NCPolynomial add(const NCPolynomial& a, const NCPolynomial& b);
NCPolynomial neg(const NCPolynomial& a);
NCPolynomial mul(const NCPolynomial& a, const NCPolynomial& b);

/// Bijection between the nonzero constants occurring in translated formulas
/// and indeterminates, assigned in first-appearance order. Zero constants
/// never receive an indeterminate.
class IndeterminateTable {
public:
  Indet intern(const Signature& sig, ConstId c);
  std::optional<Indet> lookup(ConstId c) const;
  ConstId constant_of(Indet x) const { return constants_.at(x); }
  const std::string& name(Indet x) const { return names_.at(x); }
  const std::vector<std::string>& names() const { return names_; }
  size_t size() const { return constants_.size(); }

private:
  std::vector<ConstId> constants_;
  std::vector<std::string> names_;
  std::map<ConstId, Indet> index_;
};

/// T: arithmetic ground terms to polynomials. Zero constants map to 0; every
/// other constant (identity morphisms included) maps to its indeterminate;
/// the arithmetic symbols map to the ring operations.
NCPolynomial translate_term(const Signature& sig, const Term& t, IndeterminateTable& tbl);

/// The polynomial s - t attached to a literal s = t or s != t.
NCPolynomial literal_poly(const Signature& sig, const Term& s, const Term& t,
                          IndeterminateTable& tbl);

std::string render_poly(const NCPolynomial& p, const std::vector<std::string>& names);

}  // namespace opstat
