#pragma once

#include <map>
#include <optional>
#include <vector>

#include "opstat/logic.hpp"

namespace opstat {

struct AckInstance {
  FuncId fn;
  Term original;                // instance as it appears in the input
  std::vector<Term> flat_args;  // arguments with inner instances replaced
  ConstId constant;
};

struct AckermannResult {
  Formula flat;                  // input with every instance replaced by its constant
  Formula fc;                    // functional-consistency constraints; null when none
  Formula result;                // fc -> flat, or flat when fc is empty
  std::vector<AckInstance> table;
  std::vector<Formula> fc_units; // the individual FC implications, in pair order
  Signature extended_signature;
};

/// Persistent instance-to-constant memo so that repeated reductions of
/// growing formulas reuse constants for syntactically identical instances.
struct AckContext {
  std::map<Term, ConstId, TermLess> memo;
};

/// Removes every instance of one non-arithmetic function symbol from a
/// quantifier-free formula. Instances are indexed by a depth-first,
/// left-to-right, innermost-first traversal; syntactically equal instances
/// share one constant; nested instances keep only the outermost constant.
AckermannResult ackermann_reduce(const Signature& sig, const Formula& f, FuncId symbol,
                                 bool fc_simplify = true, AckContext* ctx = nullptr);

/// Repeated single-symbol reduction, innermost symbol first, until only
/// arithmetic function symbols remain.
AckermannResult ackermann_reduce_all(const Signature& sig, const Formula& f,
                                     bool fc_simplify = true, AckContext* ctx = nullptr);

}  // namespace opstat
