#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opstat/logic.hpp"

namespace opstat {

struct IntroducedSymbol {
  std::string name;
  bool is_function = false;  // constant otherwise
  VarId replaced;            // the universal variable this symbol eliminated
  ConstId const_id{};
  FuncId func_id{};
};

/// Herbrand normal form of a formula: free variables universally closed,
/// prenexed, then universal quantifiers eliminated by fresh constants or
/// functions of the existential variables to their left.
struct HerbrandResult {
  Formula sentence;
  Signature extended_signature;
  std::vector<IntroducedSymbol> introduced;
  std::vector<VarId> existentials;  // prefix variables, outermost first
  Formula matrix;
};

HerbrandResult herbrandise(const Signature& sig, const Formula& f);

/// Lazily enumerates ground terms of each sort in (size, non-zero first,
/// symbol id) order; argument tuples of function applications are enumerated
/// by increasing total size, ties lexicographic.
class GroundTerms {
public:
  explicit GroundTerms(const Signature& sig) : sig_(&sig) {}
  const std::vector<Term>& of_size(Sort sort, uint32_t n);
  /// Global index in the fair order; extends caches as needed.
  Term at(Sort sort, size_t index);
  /// True when this sort can never produce a ground term.
  bool empty_universe(Sort sort);

private:
  const Signature* sig_;
  std::map<std::pair<Sort, uint32_t>, std::vector<Term>> by_size_;
};

struct GroundInstance {
  Formula sentence;
  std::map<VarId, Term> instantiation;
  bool from_hint = false;
};

/// Fair stream over the Herbrand expansion H(h) of a sentence in Herbrand
/// normal form. Hints are emitted first, in order, then the systematic
/// enumeration; for a ground h the stream has exactly one element.
class GroundEnumerator {
public:
  GroundEnumerator(const Signature& sig, const HerbrandResult& h,
                   std::vector<std::map<VarId, Term>> hints);

  std::optional<GroundInstance> next();
  bool finite() const { return vars_.empty(); }

private:
  Term tuple_term(size_t var_index, uint32_t size, size_t rank);
  std::optional<std::vector<Term>> next_tuple();

  Signature sig_;
  Formula matrix_;
  std::vector<VarId> vars_;
  std::vector<Sort> sorts_;
  std::vector<std::map<VarId, Term>> hints_;
  size_t hint_pos_ = 0;
  GroundTerms terms_;
  bool ground_done_ = false;
  // systematic enumeration state: total size, then composition cursor
  uint32_t total_ = 0;
  std::vector<uint32_t> sizes_;    // current composition of total_ into vars
  std::vector<size_t> cursor_;     // index within of_size for each position
  bool composition_fresh_ = true;
  bool advance_composition();
};

}  // namespace opstat
