#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "opstat/ackermann.hpp"
#include "opstat/herbrand.hpp"
#include "opstat/idealise.hpp"
#include "opstat/problem.hpp"
#include "opstat/surface.hpp"

namespace opstat {

struct ProverConfig {
  uint64_t max_rounds = 0;  // 0 = unbounded
  /// Round n grants n * ops_scale fresh operations to every live instance
  /// set, so total work per instance grows triangularly and fairly.
  uint64_t ops_scale = 1;
  std::vector<HintBlock> hints;
  std::vector<RewriteRule> rules;
  std::vector<std::string> adjoint_symbols;
  bool incremental = true;
  bool witness_search = true;
  int node_timeout_ms = 1000;
  std::optional<uint32_t> max_degree;
  unsigned threads = 1;
  uint64_t rewrite_cap = 10000;
  bool fc_simplify = true;
  uint64_t witness_budget = 50000;
};

struct ProofTrace {
  std::vector<IntroducedSymbol> herbrand_introduced;
  std::vector<std::string> instantiations;      // rendered, one line per used instance
  std::vector<std::string> ackermann_entries;   // rendered instance -> constant
  SentenceIdealisation result;                  // records of the deciding instance set
  uint64_t membership_tests = 0;
  uint64_t rounds = 0;
  uint64_t ackermann_runs = 0;
  int deciding_instance = 0;  // k of the instance set that decided; 0 if none
  bool ground_fast_path = false;
  bool used_witness_search = false;
  std::vector<std::string> witness_bindings;    // rendered var -> term
  double wall_ms = 0;
  std::vector<uint64_t> task_ops;               // cumulative ops granted per instance set
  std::vector<std::string> indet_names;
};

enum class ProveStatus { Proved, NotProvable, Timeout };

struct ProveResult {
  ProveStatus status = ProveStatus::Timeout;
  ProofTrace trace;
  Signature sig;  // extended with Herbrand and Ackermann symbols; renders the trace
};

struct Problem {
  Signature sig;
  std::vector<Formula> assumptions;
  Formula claim;
};

/// Fair interleaved semi-decision loop: Herbrandisation, hint-first fair
/// enumeration of the expansion, Ackermann reduction of growing instance
/// disjunctions, and budgeted idealisation; rounds grant every live instance
/// set a strictly increasing amount of completion work. Terminates with
/// Proved exactly when some instance set's idealisation verifies true;
/// NotProvable is only emitted on the ground fast path from a definitively
/// false clause with completed bases.
ProveResult prove(const Problem& problem, const ProverConfig& cfg);

/// Delegates to find_witness for each dummy; absent witnesses are omitted.
std::map<Indet, NCPolynomial> search_existential_witnesses(const IdealPresentation& assumptions,
                                                           const std::vector<Indet>& dummies,
                                                           uint64_t budget);

}  // namespace opstat
