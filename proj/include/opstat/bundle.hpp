#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "opstat/prover.hpp"

namespace opstat {

/// Self-contained certificate bundle: indeterminate table, global generator
/// list, monomial order, and one record per verified clause. The file can be
/// replayed by `check-cert` with no other context.
struct BundleClause {
  std::string text;                 // clause rendering, informative
  std::vector<uint32_t> gen_refs;   // indices into Bundle::generators
  MembershipCertificate cert;       // summand indices refer to gen_refs positions
};

struct Bundle {
  std::vector<std::string> indet_names;
  std::vector<std::string> elim_names;
  std::vector<NCPolynomial> generators;
  std::vector<BundleClause> clauses;
};

Bundle make_bundle(const ProofTrace& trace, const Signature& sig);
std::string write_bundle(const Bundle& b);
Bundle parse_bundle(const std::string& text);  // throws ParseError
/// Replays every record; true iff each expansion equals its target exactly.
bool check_bundle(const Bundle& b);

std::string render_certificate(const MembershipCertificate& cert,
                               const std::vector<std::string>& names);

}  // namespace opstat
