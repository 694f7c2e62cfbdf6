#pragma once

#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "opstat/ncpoly.hpp"

namespace opstat {

/// Degree-lexicographic word order, optionally with an elimination block
/// ranked above everything else. Indeterminates earlier in `precedence` are
/// larger. Total well-order compatible with concatenation.
struct MonomialOrder {
  std::vector<Indet> precedence;
  std::vector<Indet> elimination;

  /// <0 when a is smaller, 0 on equality, >0 when a is larger.
  int compare(const Word& a, const Word& b) const;
  bool less(const Word& a, const Word& b) const { return compare(a, b) < 0; }
  bool has_eliminated(const Word& w) const;

  static MonomialOrder deglex(size_t indet_count);
};

struct CertSummand {
  Coeff coeff;
  Word left;
  uint32_t gen = 0;
  Word right;
};

/// Cofactor representation target = sum coeff * left * g_gen * right.
struct MembershipCertificate {
  NCPolynomial target;
  std::vector<CertSummand> summands;
  /// Merge summands with identical (left, gen, right); drop zero summands.
  void normalize();
};

struct IdealPresentation {
  std::vector<NCPolynomial> generators;  // nonzero; empty list = zero ideal
  MonomialOrder order;
};

NCPolynomial expand_certificate(const MembershipCertificate& cert,
                                const std::vector<NCPolynomial>& generators);
/// Accepts iff the exact polynomial identity holds.
bool check_certificate(const MembershipCertificate& cert, const IdealPresentation& ideal);

struct BasisElement {
  NCPolynomial poly;
  std::vector<std::pair<Word, Coeff>> ordered;  // descending; front is leading
  MembershipCertificate cert;                   // poly w.r.t. original generators
};

/// Degree-bounded strong Groebner completion over Z<X> with provenance.
/// Processes overlap/inclusion ambiguities in increasing overlap degree; over
/// Z both S-polynomials and extended-gcd G-polynomials are formed. Every
/// basis element carries a checking certificate in terms of the original
/// generators. One operation = one ambiguity processed or one adjunction.
class CompletionState {
public:
  explicit CompletionState(IdealPresentation p, std::optional<uint32_t> degree_cap = std::nullopt);

  const MonomialOrder& order() const { return order_; }
  const std::vector<NCPolynomial>& original_generators() const { return original_; }
  size_t basis_size() const { return basis_.size(); }
  const BasisElement& basis(size_t i) const { return basis_[i]; }
  bool queue_empty() const { return queue_.empty(); }
  /// Strong basis reached: queue empty and nothing was discarded by a cap.
  bool complete() const { return queue_.empty() && !discarded_; }
  uint64_t op_counter() const { return ops_; }

  /// Process up to `budget` operations; returns the number consumed.
  uint64_t step(uint64_t budget);

private:
  struct Ambiguity {
    uint32_t deg;  // overlap word length
    uint64_t seq;
    uint32_t i, j;
    Word left_i, right_i, left_j, right_j;
    bool gpoly;
    bool operator<(const Ambiguity& o) const {
      if (deg != o.deg) return deg < o.deg;
      return seq < o.seq;
    }
  };

  void adjoin(NCPolynomial p, MembershipCertificate cert);
  void enqueue_pairs(uint32_t n);
  void push_ambiguity(uint32_t i, uint32_t j, Word li, Word ri, Word lj, Word rj, uint32_t deg);

  MonomialOrder order_;
  std::vector<NCPolynomial> original_;
  std::vector<BasisElement> basis_;
  std::set<Ambiguity> queue_;
  uint64_t seq_ = 0;
  uint64_t ops_ = 0;
  bool discarded_ = false;
  std::optional<uint32_t> degree_cap_;
};

struct ReduceOutcome {
  NCPolynomial remainder;
  MembershipCertificate cert;  // certificate for f - remainder
};

/// Full normal form of f against the current basis: no monomial of the
/// remainder has a factor equal to a basis leading word with dividing
/// leading coefficient.
ReduceOutcome reduce(const NCPolynomial& f, const CompletionState& state);

enum class MemberVerdict { Member, NotMember, Unknown };

struct MembershipResult {
  MemberVerdict verdict = MemberVerdict::Unknown;
  std::optional<MembershipCertificate> certificate;  // Member only
  std::vector<NCPolynomial> complete_basis;          // NotMember only
};

MembershipResult verify_membership(const NCPolynomial& f, const IdealPresentation& ideal,
                                   uint64_t budget);

/// Resumable membership question against a shared completion state.
class MembershipQuery {
public:
  explicit MembershipQuery(NCPolynomial target);
  MemberVerdict poll(const CompletionState& state);
  const NCPolynomial& target() const { return target_; }
  MembershipCertificate certificate() const;  // valid after Member

private:
  NCPolynomial target_;
  NCPolynomial remainder_;
  std::vector<CertSummand> summands_;
  size_t basis_seen_ = 0;
  bool started_ = false;
};

/// Runs completion under an elimination order; returns w when a basis
/// element +-(dummy - w) with w free of eliminated indeterminates appears
/// within budget.
std::optional<NCPolynomial> find_witness(const IdealPresentation& ideal, Indet dummy,
                                         uint64_t budget);

}  // namespace opstat
