#include "opstat/idealise.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace opstat {

const char* verdict_name(Verdict3 v) {
  switch (v) {
    case Verdict3::True: return "true";
    case Verdict3::False: return "false";
    case Verdict3::Unknown: return "unknown";
  }
  return "?";
}

namespace {

std::string cache_key(const std::vector<NCPolynomial>& gens, const MonomialOrder& order,
                      std::optional<uint32_t> cap) {
  std::ostringstream out;
  for (Indet x : order.elimination) out << "e" << x;
  if (cap) out << "c" << *cap;
  for (const NCPolynomial& g : gens) {
    out << "|";
    for (const auto& [w, c] : g.terms()) {
      out << c.str() << ":";
      for (Indet x : w) out << x << ".";
      out << ";";
    }
  }
  return out.str();
}

}  // namespace

std::shared_ptr<CompletionCache::Entry> CompletionCache::get(
    const std::vector<NCPolynomial>& generators, const MonomialOrder& order,
    std::optional<uint32_t> cap) {
  std::string key = cache_key(generators, order, cap);
  std::lock_guard<std::mutex> lock(m_);
  auto it = entries_.find(key);
  if (it != entries_.end()) return it->second;
  auto entry = std::make_shared<Entry>(IdealPresentation{generators, order}, cap);
  entries_.emplace(std::move(key), entry);
  return entry;
}

TranslatedClause translate_clause(const Signature& sig, const Clause& c, IndeterminateTable& tbl) {
  TranslatedClause out;
  for (const Literal& n : c.negatives) {
    NCPolynomial p = literal_poly(sig, n.lhs, n.rhs, tbl);
    if (!p.is_zero()) out.generators.push_back(std::move(p));
  }
  // Canonical generator order: deterministic cache keys and certificate
  // generator indices independent of literal order.
  std::sort(out.generators.begin(), out.generators.end());
  out.generators.erase(std::unique(out.generators.begin(), out.generators.end()),
                       out.generators.end());
  for (const Literal& p : c.positives) {
    out.candidates.push_back(literal_poly(sig, p.lhs, p.rhs, tbl));
  }
  return out;
}

ClauseTask::ClauseTask(IdealiseContext& ctx, const Signature& sig, Clause clause) : ctx_(&ctx) {
  clause.canonicalise();
  record_.clause = clause;
  TranslatedClause tc = translate_clause(sig, clause, ctx.table);
  record_.candidates = tc.candidates;
  if (tc.candidates.empty()) {
    // The empty disjunction of memberships is false.
    record_.generators = std::move(tc.generators);
    record_.verdict = Verdict3::False;
    return;
  }
  entry_ = ctx.cache.get(tc.generators, ctx.order(), ctx.degree_cap);
  record_.generators = entry_->state.original_generators();
  for (const NCPolynomial& cand : tc.candidates) queries_.emplace_back(cand);
  resolved_.assign(queries_.size(), 0);
  counted_.assign(queries_.size(), 0);
}

Verdict3 ClauseTask::pump(uint64_t& ops_left, const Deadline& deadline) {
  if (record_.verdict != Verdict3::Unknown) return record_.verdict;
  std::lock_guard<std::mutex> lock(entry_->m);
  CompletionState& st = entry_->state;
  for (;;) {
    size_t open = 0;
    for (size_t k = 0; k < queries_.size(); ++k) {
      if (resolved_[k]) continue;
      if (!counted_[k]) {
        counted_[k] = 1;
        ctx_->membership_tests.fetch_add(1, std::memory_order_relaxed);
      }
      MemberVerdict v = queries_[k].poll(st);
      if (v == MemberVerdict::Member) {
        record_.verdict = Verdict3::True;
        record_.winning_candidate = static_cast<int>(k);
        record_.certificate = queries_[k].certificate();
        return record_.verdict;
      }
      if (v == MemberVerdict::NotMember) {
        resolved_[k] = 1;
      } else {
        ++open;
      }
    }
    if (open == 0) {
      record_.verdict = Verdict3::False;
      for (size_t i = 0; i < st.basis_size(); ++i) {
        record_.complete_basis.push_back(st.basis(i).poly);
      }
      return record_.verdict;
    }
    if (st.queue_empty()) {
      // bounded mode discarded ambiguities: no further progress possible
      stuck_ = true;
      return Verdict3::Unknown;
    }
    if (ops_left == 0) return Verdict3::Unknown;
    if (deadline && std::chrono::steady_clock::now() >= *deadline) return Verdict3::Unknown;
    uint64_t used = st.step(std::min<uint64_t>(ops_left, 64));
    ops_left -= std::min(used, ops_left);
  }
}

SentenceTask::SentenceTask(IdealiseContext& ctx, const Signature& sig, std::vector<Clause> clauses)
    : ctx_(&ctx) {
  for (Clause& c : clauses) tasks_.push_back(std::make_unique<ClauseTask>(ctx, sig, std::move(c)));
}

Verdict3 SentenceTask::pump(uint64_t& ops_left) {
  if (verdict_ != Verdict3::Unknown) return verdict_;
  std::vector<ClauseTask*> openv;
  for (auto& t : tasks_) {
    if (t->verdict() == Verdict3::False) {
      verdict_ = Verdict3::False;
      return verdict_;
    }
    if (t->verdict() == Verdict3::Unknown && !t->stuck()) openv.push_back(t.get());
  }
  unsigned workers = std::min<unsigned>(ctx_->threads, static_cast<unsigned>(openv.size()));
  if (workers > 1 && openv.size() >= 4) {
    uint64_t share = ops_left / workers;
    std::vector<uint64_t> budgets(workers, share);
    budgets[0] += ops_left - share * workers;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (size_t i = w; i < openv.size(); i += workers) {
          if (budgets[w] == 0) break;
          openv[i]->pump(budgets[w]);
        }
      });
    }
    for (auto& th : pool) th.join();
    uint64_t left = 0;
    for (uint64_t b : budgets) left += b;
    ops_left = left;
  } else {
    size_t open_count = openv.size();
    for (ClauseTask* t : openv) {
      if (ops_left == 0) break;
      uint64_t slice = std::max<uint64_t>(ops_left / open_count, 64);
      slice = std::min(slice, ops_left);
      uint64_t before = slice;
      t->pump(slice);
      ops_left -= before - slice;
      if (open_count > 1) --open_count;
    }
  }
  bool any_unknown = false;
  for (auto& t : tasks_) {
    if (t->verdict() == Verdict3::False) {
      verdict_ = Verdict3::False;
      return verdict_;
    }
    if (t->verdict() == Verdict3::Unknown) any_unknown = true;
  }
  verdict_ = any_unknown ? Verdict3::Unknown : Verdict3::True;
  return verdict_;
}

void SentenceTask::collect(SentenceIdealisation& out) const {
  for (const auto& t : tasks_) out.clauses.push_back(t->record());
  out.verdict = verdict_;
}

IncrementalTask::IncrementalTask(IdealiseContext& ctx, const Signature& sig,
                                 std::vector<Clause> base_clauses, std::vector<Clause> units,
                                 int node_timeout_ms)
    : ctx_(&ctx), sig_(&sig), units_(std::move(units)), node_timeout_ms_(node_timeout_ms) {
  for (Clause& c : base_clauses) {
    auto node = std::make_unique<Node>();
    c.canonicalise();
    node->clause = std::move(c);
    node->next_unit = 0;
    roots_.push_back(std::move(node));
  }
}

void IncrementalTask::expand(Node& node) {
  const Clause& unit = units_[node.next_unit];
  auto add_child = [&](bool negate_positive, const Literal& lit) {
    auto kid = std::make_unique<Node>();
    kid->clause = node.clause;
    if (negate_positive) {
      kid->clause.negatives.push_back(lit);  // ~(p = q)
    } else {
      kid->clause.positives.push_back(lit);  // ~(s != t)
    }
    kid->clause.canonicalise();
    kid->next_unit = node.next_unit + 1;
    node.kids.push_back(std::move(kid));
  };
  for (const Literal& lit : unit.negatives) add_child(false, lit);
  for (const Literal& lit : unit.positives) add_child(true, lit);
  node.expanded = true;
  node.task.reset();  // the node's own attempt is abandoned once split
}

Verdict3 IncrementalTask::pump_node(Node& node, uint64_t& ops_left) {
  if (node.resolved_true) return Verdict3::True;
  if (node.expanded) {
    bool all = true;
    for (auto& kid : node.kids) {
      if (ops_left == 0 || leaf_false_) return Verdict3::Unknown;
      Verdict3 v = pump_node(*kid, ops_left);
      if (v == Verdict3::False) return Verdict3::False;
      if (v != Verdict3::True) all = false;
    }
    if (all) node.resolved_true = true;
    return all ? Verdict3::True : Verdict3::Unknown;
  }
  bool leaf = node.next_unit >= units_.size();
  if (!node.task) node.task = std::make_unique<ClauseTask>(*ctx_, *sig_, node.clause);
  Deadline deadline;
  if (!leaf && node_timeout_ms_ > 0) {
    double left_ms = node_timeout_ms_ - node.active_ms;
    if (left_ms > 0) {
      deadline = std::chrono::steady_clock::now() +
                 std::chrono::milliseconds(static_cast<int64_t>(left_ms));
    }
  }
  auto t0 = std::chrono::steady_clock::now();
  Verdict3 v = node.task->pump(ops_left, deadline);
  node.active_ms +=
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (v == Verdict3::True) {
    node.resolved_true = true;
    return v;
  }
  if (leaf) {
    if (v == Verdict3::False) {
      leaf_false_ = true;
      return Verdict3::False;
    }
    if (node.task->stuck()) return Verdict3::Unknown;
    return Verdict3::Unknown;
  }
  // interior: split when refuted or out of node time; otherwise wait for the
  // next pump (budget ran out mid-attempt).
  bool timed_out = node_timeout_ms_ > 0 && node.active_ms >= node_timeout_ms_;
  if (v == Verdict3::False || timed_out || node.task->stuck()) expand(node);
  return Verdict3::Unknown;
}

Verdict3 IncrementalTask::pump(uint64_t& ops_left) {
  if (verdict_ != Verdict3::Unknown) return verdict_;
  bool all = true;
  for (auto& root : roots_) {
    Verdict3 v = pump_node(*root, ops_left);
    if (v == Verdict3::False || leaf_false_) {
      verdict_ = Verdict3::False;
      return verdict_;
    }
    if (v != Verdict3::True) all = false;
    if (ops_left == 0) break;
  }
  bool done = all;
  if (done) {
    for (auto& root : roots_) done = done && all_true(*root);
  }
  if (done) verdict_ = Verdict3::True;
  return verdict_;
}

bool IncrementalTask::all_true(const Node& n) const {
  if (n.resolved_true) return true;
  if (!n.expanded) return false;
  for (const auto& kid : n.kids) {
    if (!all_true(*kid)) return false;
  }
  return true;
}

void IncrementalTask::collect_nodes(const Node& n, SentenceIdealisation& out) {
  if (n.task && n.task->verdict() != Verdict3::Unknown) out.clauses.push_back(n.task->record());
  for (const auto& kid : n.kids) collect_nodes(*kid, out);
}

void IncrementalTask::collect(SentenceIdealisation& out) const {
  for (const auto& root : roots_) {
    out.base_clauses.push_back(root->clause);
    collect_nodes(*root, out);
  }
  out.verdict = verdict_;
}

ProductTask::ProductTask(IdealiseContext& ctx, const Signature& sig,
                         std::vector<std::vector<Clause>> parts)
    : ctx_(&ctx), sig_(&sig), parts_(std::move(parts)) {
  for (const auto& p : parts_) {
    if (p.empty()) {
      // a component with no clauses is the constant true formula
      verdict_ = Verdict3::True;
      return;
    }
  }
  cursor_.assign(parts_.size(), 0);
}

bool ProductTask::materialise_next() {
  if (enum_done_) return false;
  if (!enum_started_) {
    enum_started_ = true;
  } else {
    size_t pos = cursor_.size();
    bool advanced = false;
    while (pos-- > 0) {
      if (++cursor_[pos] < parts_[pos].size()) {
        advanced = true;
        break;
      }
      cursor_[pos] = 0;
      if (pos == 0) break;
    }
    if (!advanced) {
      enum_done_ = true;
      return false;
    }
  }
  Clause c;
  for (size_t i = 0; i < parts_.size(); ++i) {
    const Clause& part = parts_[i][cursor_[i]];
    c.negatives.insert(c.negatives.end(), part.negatives.begin(), part.negatives.end());
    c.positives.insert(c.positives.end(), part.positives.begin(), part.positives.end());
  }
  open_.push_back(std::make_unique<ClauseTask>(*ctx_, *sig_, std::move(c)));
  return true;
}

Verdict3 ProductTask::pump(uint64_t& ops_left) {
  if (verdict_ != Verdict3::Unknown) return verdict_;
  while (ops_left > 0) {
    size_t window = 4 + static_cast<size_t>(spent_ / 1024);
    while (open_.size() < window && !enum_done_) {
      if (!materialise_next()) break;
      if (ops_left == 0) break;
      --ops_left;
      ++spent_;
    }
    if (open_.empty()) {
      if (enum_done_) {
        verdict_ = Verdict3::True;
        return verdict_;
      }
      if (ops_left == 0) break;
      continue;
    }
    bool progressed = false;
    for (auto it = open_.begin(); it != open_.end() && ops_left > 0;) {
      uint64_t slice = std::min<uint64_t>(ops_left, 128);
      uint64_t before = slice;
      Verdict3 v = (*it)->pump(slice);
      uint64_t used = before - slice;
      ops_left -= used;
      spent_ += used;
      if (used > 0) progressed = true;
      if (v == Verdict3::False) {
        verdict_ = Verdict3::False;
        finished_.push_back((*it)->record());
        return verdict_;
      }
      if (v == Verdict3::True) {
        if (finished_.size() < 4096) finished_.push_back((*it)->record());
        it = open_.erase(it);
        progressed = true;
      } else {
        if ((*it)->stuck()) {
          return Verdict3::Unknown;  // bounded mode: cannot resolve this clause
        }
        ++it;
      }
    }
    if (!progressed && (enum_done_ || open_.size() >= window)) break;
  }
  return Verdict3::Unknown;
}

void ProductTask::collect(SentenceIdealisation& out) const {
  for (const auto& r : finished_) out.clauses.push_back(r);
  for (const auto& t : open_) {
    if (t->verdict() != Verdict3::Unknown) out.clauses.push_back(t->record());
  }
  out.verdict = verdict_;
}

ClauseIdealisation idealise_clause(IdealiseContext& ctx, const Signature& sig, const Clause& c,
                                   uint64_t budget) {
  for (const Literal& l : c.negatives) {
    if (!is_ground(l.lhs) || !is_ground(l.rhs)) throw NotGroundError("clause is not ground");
  }
  for (const Literal& l : c.positives) {
    if (!is_ground(l.lhs) || !is_ground(l.rhs)) throw NotGroundError("clause is not ground");
  }
  ClauseTask task(ctx, sig, c);
  uint64_t left = budget;
  for (;;) {
    uint64_t before = left;
    Verdict3 v = task.pump(left);
    if (v != Verdict3::Unknown || left == 0 || left == before) break;
  }
  return task.record();
}

SentenceIdealisation idealise_sentence(IdealiseContext& ctx, const Signature& sig,
                                       const Formula& phi, uint64_t budget) {
  if (!is_ground_sentence(phi)) throw NotGroundError("idealisation requires a ground sentence");
  if (!is_arithmetic(sig, phi)) {
    throw NonArithmeticError("idealisation requires an arithmetic sentence");
  }
  SentenceTask task(ctx, sig, to_cnf(phi));
  uint64_t left = budget;
  for (;;) {
    uint64_t before = left;
    Verdict3 v = task.pump(left);
    if (v != Verdict3::Unknown || left == 0 || left == before) break;
  }
  SentenceIdealisation out;
  task.collect(out);
  return out;
}

std::unique_ptr<IncrementalTask> build_incremental_task(IdealiseContext& ctx, const Signature& sig,
                                                        const std::vector<Formula>& assumptions,
                                                        const Formula& claim,
                                                        int node_timeout_ms) {
  if (!is_ground_sentence(claim)) throw NotGroundError("idealisation requires a ground sentence");
  if (!is_arithmetic(sig, claim)) {
    throw NonArithmeticError("idealisation requires an arithmetic sentence");
  }
  std::vector<Clause> base = to_cnf(claim);
  std::vector<Clause> units;
  for (const Formula& a : assumptions) {
    if (!is_ground_sentence(a) || !is_arithmetic(sig, a)) {
      throw NotGroundError("assumptions must be arithmetic ground sentences");
    }
    // Assumption clauses with one literal never branch: fold them into every
    // base clause up front.
    for (Clause& c : to_cnf(a)) {
      if (c.negatives.size() + c.positives.size() == 1) {
        for (Clause& b : base) {
          if (!c.negatives.empty()) {
            b.positives.push_back(c.negatives[0]);
          } else {
            b.negatives.push_back(c.positives[0]);
          }
        }
      } else {
        units.push_back(std::move(c));
      }
    }
  }
  return std::make_unique<IncrementalTask>(ctx, sig, std::move(base), std::move(units),
                                           node_timeout_ms);
}

SentenceIdealisation idealise_incremental(IdealiseContext& ctx, const Signature& sig,
                                          const std::vector<Formula>& assumptions,
                                          const Formula& claim, uint64_t budget,
                                          int node_timeout_ms) {
  auto task = build_incremental_task(ctx, sig, assumptions, claim, node_timeout_ms);
  uint64_t left = budget;
  for (;;) {
    uint64_t before = left;
    Verdict3 v = task->pump(left);
    if (v != Verdict3::Unknown || left == 0 || left == before) break;
  }
  SentenceIdealisation out;
  task->collect(out);
  return out;
}

}  // namespace opstat
