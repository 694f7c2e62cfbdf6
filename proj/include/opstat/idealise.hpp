#pragma once

#include <atomic>
#include <chrono>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>

#include "opstat/logic.hpp"
#include "opstat/membership.hpp"

namespace opstat {

enum class Verdict3 : uint8_t { True, False, Unknown };
const char* verdict_name(Verdict3 v);

/// Completion states shared between clauses with the same generator multiset
/// (and across repeated attempts with growing budgets). Entries are
/// individually locked; budgets accumulate in the shared state.
class CompletionCache {
public:
  struct Entry {
    std::mutex m;
    CompletionState state;
    Entry(IdealPresentation p, std::optional<uint32_t> cap) : state(std::move(p), cap) {}
  };
  std::shared_ptr<Entry> get(const std::vector<NCPolynomial>& generators,
                             const MonomialOrder& order, std::optional<uint32_t> cap);

private:
  std::mutex m_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
};

/// Shared context of one idealisation run: the indeterminate table (interned
/// in first-appearance order), the completion cache, and counters. The
/// monomial order is degree-lexicographic with precedence identical to the
/// table order.
struct IdealiseContext {
  IndeterminateTable table;
  CompletionCache cache;
  std::atomic<uint64_t> membership_tests{0};
  std::optional<uint32_t> degree_cap;
  unsigned threads = 1;
  MonomialOrder order() const { return MonomialOrder{}; }
};

struct ClauseIdealisation {
  Clause clause;
  std::vector<NCPolynomial> generators;  // translated, nonzero, canonical order
  std::vector<NCPolynomial> candidates;  // aligned with clause.positives
  Verdict3 verdict = Verdict3::Unknown;
  int winning_candidate = -1;
  std::optional<MembershipCertificate> certificate;
  std::vector<NCPolynomial> complete_basis;  // False only
};

struct SentenceIdealisation {
  std::vector<ClauseIdealisation> clauses;
  std::vector<Clause> base_clauses;  // incremental roots; empty otherwise
  Verdict3 verdict = Verdict3::Unknown;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// One clause's idealisation: candidates polled fairly against a shared
/// completion of the negative-literal ideal; first Member wins, all
/// NotMember is False, and an empty candidate list is immediately False.
class ClauseTask {
public:
  ClauseTask(IdealiseContext& ctx, const Signature& sig, Clause clause);
  Verdict3 pump(uint64_t& ops_left, const Deadline& deadline = {});
  Verdict3 verdict() const { return record_.verdict; }
  const ClauseIdealisation& record() const { return record_; }
  bool stuck() const { return stuck_; }

private:
  IdealiseContext* ctx_;
  ClauseIdealisation record_;
  std::shared_ptr<CompletionCache::Entry> entry_;
  std::vector<MembershipQuery> queries_;   // aligned with candidates
  std::vector<int8_t> resolved_;           // 0 open, 1 dead
  std::vector<int8_t> counted_;
  bool stuck_ = false;
};

/// Materialised CNF, clauses verified independently (in parallel when the
/// context allows several workers).
class SentenceTask {
public:
  SentenceTask(IdealiseContext& ctx, const Signature& sig, std::vector<Clause> clauses);
  Verdict3 pump(uint64_t& ops_left);
  Verdict3 verdict() const { return verdict_; }
  void collect(SentenceIdealisation& out) const;

private:
  IdealiseContext* ctx_;
  std::vector<std::unique_ptr<ClauseTask>> tasks_;
  Verdict3 verdict_ = Verdict3::Unknown;
};

/// Incremental idealisation tree: each root is a claim-side clause; a node
/// that cannot be verified within its time slice is split on the next
/// assumption unit, adding the negation of one unit literal per child. A
/// True node prunes its whole subtree; a False leaf decides the sentence.
class IncrementalTask {
public:
  IncrementalTask(IdealiseContext& ctx, const Signature& sig, std::vector<Clause> base_clauses,
                  std::vector<Clause> units, int node_timeout_ms);
  Verdict3 pump(uint64_t& ops_left);
  Verdict3 verdict() const { return verdict_; }
  void collect(SentenceIdealisation& out) const;

private:
  struct Node {
    Clause clause;
    size_t next_unit = 0;
    std::unique_ptr<ClauseTask> task;
    std::vector<std::unique_ptr<Node>> kids;
    bool expanded = false;
    bool resolved_true = false;
    double active_ms = 0;
  };
  Verdict3 pump_node(Node& node, uint64_t& ops_left);
  void expand(Node& node);
  static void collect_nodes(const Node& n, SentenceIdealisation& out);
  bool all_true(const Node& n) const;

  IdealiseContext* ctx_;
  const Signature* sig_;
  std::vector<Clause> units_;
  std::vector<std::unique_ptr<Node>> roots_;
  int node_timeout_ms_;
  bool leaf_false_ = false;
  Verdict3 verdict_ = Verdict3::Unknown;
};

/// Lazy product of several clause lists (the CNF of a disjunction): final
/// clauses are unions of one clause per component, materialised on demand
/// under a slowly growing window.
class ProductTask {
public:
  ProductTask(IdealiseContext& ctx, const Signature& sig, std::vector<std::vector<Clause>> parts);
  Verdict3 pump(uint64_t& ops_left);
  Verdict3 verdict() const { return verdict_; }
  void collect(SentenceIdealisation& out) const;

private:
  bool materialise_next();

  IdealiseContext* ctx_;
  const Signature* sig_;
  std::vector<std::vector<Clause>> parts_;
  std::vector<size_t> cursor_;
  bool enum_done_ = false;
  bool enum_started_ = false;
  std::deque<std::unique_ptr<ClauseTask>> open_;
  std::vector<ClauseIdealisation> finished_;
  uint64_t spent_ = 0;
  Verdict3 verdict_ = Verdict3::Unknown;
};

/// Builds the incremental task for (/\ assumptions) -> claim over
/// quantifier-free ground arithmetic formulas: base clauses come from the
/// claim (single-literal assumption clauses folded in), split units from the
/// remaining assumption clauses in list order.
std::unique_ptr<IncrementalTask> build_incremental_task(IdealiseContext& ctx, const Signature& sig,
                                                        const std::vector<Formula>& assumptions,
                                                        const Formula& claim, int node_timeout_ms);

struct TranslatedClause {
  std::vector<NCPolynomial> generators;
  std::vector<NCPolynomial> candidates;
};
TranslatedClause translate_clause(const Signature& sig, const Clause& c, IndeterminateTable& tbl);

ClauseIdealisation idealise_clause(IdealiseContext& ctx, const Signature& sig, const Clause& c,
                                   uint64_t budget);
SentenceIdealisation idealise_sentence(IdealiseContext& ctx, const Signature& sig,
                                       const Formula& phi, uint64_t budget);
SentenceIdealisation idealise_incremental(IdealiseContext& ctx, const Signature& sig,
                                          const std::vector<Formula>& assumptions,
                                          const Formula& claim, uint64_t budget,
                                          int node_timeout_ms);

}  // namespace opstat
