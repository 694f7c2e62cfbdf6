#include "opstat/prover.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace opstat {

namespace {

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Formula::Kind::And) {
    flatten_and(f.child(0), out);
    flatten_and(f.child(1), out);
    return;
  }
  out.push_back(f);
}

void flatten_or(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Formula::Kind::Or) {
    flatten_or(f.child(0), out);
    flatten_or(f.child(1), out);
    return;
  }
  out.push_back(f);
}

void collect_equations(const Formula& f, std::vector<Formula>& out) {
  if (f.is_eq()) {
    out.push_back(f);
    return;
  }
  for (size_t i = 0; i < f.child_count(); ++i) collect_equations(f.child(i), out);
}

bool term_contains_constant(const Term& t, const std::set<ConstId>& cs) {
  if (t.is_const()) return cs.count(t.constant()) > 0;
  if (t.is_apply()) {
    for (const Term& a : t.args()) {
      if (term_contains_constant(a, cs)) return true;
    }
  }
  return false;
}

struct PsiTask {
  std::unique_ptr<IncrementalTask> inc;
  std::unique_ptr<SentenceTask> flat;
  std::unique_ptr<ProductTask> product;
  uint64_t granted = 0;
  bool dead = false;

  Verdict3 pump(uint64_t& ops) {
    if (inc) return inc->pump(ops);
    if (flat) return flat->pump(ops);
    return product->pump(ops);
  }
  Verdict3 verdict() const {
    if (inc) return inc->verdict();
    if (flat) return flat->verdict();
    return product->verdict();
  }
  void collect(SentenceIdealisation& out) const {
    if (inc) {
      inc->collect(out);
    } else if (flat) {
      flat->collect(out);
    } else {
      product->collect(out);
    }
  }
};

struct ProverState {
  const ProverConfig& cfg;
  Signature sig;  // grows with Herbrand and Ackermann constants; ids stable
  HerbrandResult herbrand;
  std::unique_ptr<GroundEnumerator> enumerator;
  AckContext ackctx;
  IdealiseContext ideal_ctx;
  std::vector<Formula> instances;  // rewritten ground instances
  std::vector<std::string> instance_lines;
  std::vector<PsiTask> tasks;
  std::map<uint32_t, std::string> ack_lines;  // keyed by constant id
  ProofTrace trace;

  explicit ProverState(const ProverConfig& c) : cfg(c) {}

  Formula rewrite(const Formula& f) {
    return apply_universal_rules(sig, f, cfg.rules, cfg.rewrite_cap);
  }

  void note_ack(const AckermannResult& res) {
    ++trace.ackermann_runs;
    for (const AckInstance& inst : res.table) {
      if (!ack_lines.count(inst.constant.value)) {
        ack_lines.emplace(inst.constant.value, sig.constant(inst.constant).name + " <- " +
                                                   render_term(sig, inst.original));
      }
    }
  }

  // Split an instance's flattened matrix into assumption formulas and claim.
  static void split_matrix(const Formula& flat, std::vector<Formula>& assumptions,
                           Formula& claim) {
    if (flat.kind() == Formula::Kind::Implies) {
      flatten_and(flat.child(0), assumptions);
      claim = flat.child(1);
    } else {
      claim = flat;
    }
  }

  void build_task(size_t k) {  // 1-based
    while (tasks.size() < k) tasks.emplace_back();
    PsiTask& slot = tasks[k - 1];
    if (k == 1) {
      AckermannResult res = ackermann_reduce_all(sig, instances[0], cfg.fc_simplify, &ackctx);
      sig = res.extended_signature;
      note_ack(res);
      if (cfg.incremental) {
        std::vector<Formula> assumptions;
        Formula claim;
        split_matrix(res.flat, assumptions, claim);
        assumptions.insert(assumptions.end(), res.fc_units.begin(), res.fc_units.end());
        slot.inc = build_incremental_task(ideal_ctx, sig, assumptions, claim, cfg.node_timeout_ms);
      } else {
        slot.flat = std::make_unique<SentenceTask>(ideal_ctx, sig, to_cnf(res.result));
      }
      return;
    }
    std::vector<Formula> disj(instances.begin(), instances.begin() + static_cast<long>(k));
    AckermannResult res = ackermann_reduce_all(sig, mk_disj(std::move(disj)), cfg.fc_simplify,
                                               &ackctx);
    sig = res.extended_signature;
    note_ack(res);
    std::vector<std::vector<Clause>> parts;
    for (const Formula& unit : res.fc_units) parts.push_back(to_cnf(mk_not(unit)));
    std::vector<Formula> or_parts;
    flatten_or(res.flat, or_parts);
    for (const Formula& part : or_parts) parts.push_back(to_cnf(part));
    slot.product = std::make_unique<ProductTask>(ideal_ctx, sig, std::move(parts));
  }

  bool next_instance() {
    auto gi = enumerator->next();
    if (!gi) return false;
    Formula inst = rewrite(gi->sentence);
    instances.push_back(inst);
    std::ostringstream line;
    line << "instance " << instances.size() << (gi->from_hint ? " (hint):" : ":");
    for (const auto& [v, t] : gi->instantiation) {
      line << " " << sig.variable(v).name << " -> " << render_term(sig, t) << ";";
    }
    if (gi->instantiation.empty()) line << " (ground)";
    instance_lines.push_back(line.str());
    return true;
  }

  void fill_trace(int deciding, Verdict3 final_verdict) {
    trace.herbrand_introduced = herbrand.introduced;
    trace.deciding_instance = deciding;
    trace.instantiations.assign(
        instance_lines.begin(),
        deciding > 0 ? instance_lines.begin() + static_cast<long>(deciding)
                     : instance_lines.end());
    for (const auto& [id, line] : ack_lines) trace.ackermann_entries.push_back(line);
    trace.membership_tests = ideal_ctx.membership_tests.load();
    trace.indet_names = ideal_ctx.table.names();
    for (const PsiTask& t : tasks) trace.task_ops.push_back(t.granted);
    if (deciding > 0) {
      tasks[static_cast<size_t>(deciding - 1)].collect(trace.result);
    } else if (!tasks.empty()) {
      tasks[0].collect(trace.result);
    }
    trace.result.verdict = final_verdict;
  }

  // Soundness of the emitted proof object: every recorded certificate must
  // replay against its generators.
  void validate_certificates() const {
    for (const ClauseIdealisation& rec : trace.result.clauses) {
      if (rec.verdict != Verdict3::True) continue;
      if (!rec.certificate) throw Error("true clause without certificate");
      if (!check_certificate(*rec.certificate,
                             IdealPresentation{rec.generators, ideal_ctx.order()})) {
        throw Error("internal error: certificate failed to replay");
      }
    }
  }
};

// Resolve one hint block to an instantiation map; missing variables are
// reported through `missing`.
std::map<VarId, Term> resolve_hint(const Signature& sig, const HerbrandResult& h,
                                   const HintBlock& block,
                                   const std::vector<RewriteRule>& rules, uint64_t cap,
                                   std::vector<VarId>* missing) {
  std::map<std::string, Term> env;
  for (const IntroducedSymbol& intro : h.introduced) {
    if (!intro.is_function) {
      env.emplace(sig.variable(intro.replaced).name, mk_const(sig, intro.const_id));
    }
  }
  std::map<VarId, Term> out;
  for (const auto& [name, st] : block.bindings) {
    auto v = sig.find_variable(name);
    if (!v || std::find(h.existentials.begin(), h.existentials.end(), *v) ==
                  h.existentials.end()) {
      throw InputError("hint binds '" + name + "', which is not an existential variable");
    }
    Term t = resolve_surface(sig, env, st, sig.variable(*v).sort);
    if (!is_ground(t)) throw InputError("hint term for '" + name + "' is not ground");
    out.emplace(*v, apply_universal_rules(sig, t, rules, cap));
  }
  if (missing) {
    for (VarId v : h.existentials) {
      if (!out.count(v)) missing->push_back(v);
    }
  }
  return out;
}

}  // namespace

std::map<Indet, NCPolynomial> search_existential_witnesses(const IdealPresentation& assumptions,
                                                           const std::vector<Indet>& dummies,
                                                           uint64_t budget) {
  std::map<Indet, NCPolynomial> out;
  if (dummies.empty()) return out;
  uint64_t share = std::max<uint64_t>(budget / dummies.size(), 1);
  for (Indet d : dummies) {
    if (auto w = find_witness(assumptions, d, share)) out.emplace(d, std::move(*w));
  }
  return out;
}

namespace {

// Completes a partial hint by setting dummies for the unbound existentials,
// reducing the resulting instance and searching an elimination basis for
// elements dummy - w.
std::optional<std::map<VarId, Term>> complete_hint_by_witness(
    ProverState& st, const Formula& matrix, std::map<VarId, Term> hint,
    const std::vector<VarId>& missing) {
  Signature wsig = st.sig;
  std::map<VarId, ConstId> dummy_of;
  std::map<VarId, Term> full = hint;
  for (VarId v : missing) {
    ConstId c = wsig.fresh_constant(wsig.variable(v).name + "_w", wsig.variable(v).sort);
    dummy_of.emplace(v, c);
    full.emplace(v, mk_const(wsig, c));
  }
  Formula inst = substitute(wsig, matrix, full);
  inst = apply_universal_rules(wsig, inst, st.cfg.rules, st.cfg.rewrite_cap);
  AckContext wctx;
  AckermannResult ack = ackermann_reduce_all(wsig, inst, st.cfg.fc_simplify, &wctx);
  wsig = ack.extended_signature;

  // The assumption ideal: every identity appearing in the instance.
  std::vector<Formula> eqs;
  collect_equations(ack.result, eqs);
  IndeterminateTable tbl;
  std::vector<NCPolynomial> gens;
  for (const Formula& eq : eqs) {
    NCPolynomial p = literal_poly(wsig, eq.lhs(), eq.rhs(), tbl);
    if (!p.is_zero()) gens.push_back(std::move(p));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty()) return std::nullopt;

  // Eliminate the dummies and every Ackermann constant whose instance
  // involves one (e.g. the flattened image of a function applied to a dummy).
  std::set<ConstId> eliminated;
  for (const auto& [v, c] : dummy_of) eliminated.insert(c);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const AckInstance& inst2 : ack.table) {
      if (eliminated.count(inst2.constant)) continue;
      if (term_contains_constant(inst2.original, eliminated)) {
        eliminated.insert(inst2.constant);
        grew = true;
      }
    }
  }
  MonomialOrder order;
  for (ConstId c : eliminated) {
    if (auto x = tbl.lookup(c)) order.elimination.push_back(*x);
  }
  IdealPresentation ideal{gens, order};

  std::map<VarId, Term> found = hint;
  for (VarId v : missing) {
    auto x = tbl.lookup(dummy_of.at(v));
    if (!x) return std::nullopt;
    auto w = find_witness(ideal, *x, st.cfg.witness_budget);
    if (!w || w->term_count() != 1) return std::nullopt;
    const Word& word = w->terms().begin()->first;
    if (w->terms().begin()->second != 1 || word.empty()) return std::nullopt;
    // Map the witness word back to a term over the prover signature,
    // unflattening Ackermann constants through their instances.
    Term t;
    for (Indet letter : word) {
      ConstId c = tbl.constant_of(letter);
      Term factor;
      bool mapped = false;
      for (const AckInstance& inst2 : ack.table) {
        if (inst2.constant == c) {
          if (term_contains_constant(inst2.original, eliminated)) return std::nullopt;
          factor = inst2.original;
          mapped = true;
          break;
        }
      }
      if (!mapped) {
        if (!st.sig.valid(c) || eliminated.count(c)) return std::nullopt;
        factor = mk_const(st.sig, c);
      }
      t = t.null() ? factor : mk_mul(st.sig, t, factor);
    }
    if (t.sort() != st.sig.variable(v).sort) return std::nullopt;
    found.emplace(v, t);
  }
  return found;
}

}  // namespace

ProveResult prove(const Problem& problem, const ProverConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  if (problem.claim.null()) throw InputError("no claim to prove");
  check_sorts(problem.sig, problem.claim);
  for (const Formula& a : problem.assumptions) check_sorts(problem.sig, a);

  ProverState st(cfg);
  st.ideal_ctx.degree_cap = cfg.max_degree;
  st.ideal_ctx.threads = std::max(1u, cfg.threads);

  Formula phi = problem.claim;
  if (!problem.assumptions.empty()) {
    phi = mk_implies(mk_conj(problem.assumptions), problem.claim);
  }
  st.herbrand = herbrandise(problem.sig, phi);
  st.sig = st.herbrand.extended_signature;

  // Preprocessing on the matrix: adjoint extension of the assumption side,
  // then exhaustive rewriting.
  Formula matrix = st.herbrand.matrix;
  if (!cfg.adjoint_symbols.empty() && matrix.kind() == Formula::Kind::Implies) {
    std::vector<Formula> parts;
    flatten_and(matrix.child(0), parts);
    for (Formula& part : parts) {
      for (const std::string& fname : cfg.adjoint_symbols) {
        part = extend_with_function(st.sig, part, fname);
      }
    }
    matrix = mk_implies(mk_conj(std::move(parts)), matrix.child(1));
  }
  matrix = st.rewrite(matrix);
  st.herbrand.matrix = matrix;

  // Hints: resolve against the extended signature; universal variables are
  // addressed by name and map to their Herbrand constants. Blocks without a
  // binding for every existential go through the witness search.
  std::vector<std::map<VarId, Term>> resolved_hints;
  for (const HintBlock& block : cfg.hints) {
    std::vector<VarId> missing;
    std::map<VarId, Term> hint =
        resolve_hint(st.sig, st.herbrand, block, cfg.rules, cfg.rewrite_cap, &missing);
    if (missing.empty()) {
      resolved_hints.push_back(std::move(hint));
      continue;
    }
    if (!cfg.witness_search) continue;
    auto full = complete_hint_by_witness(st, matrix, hint, missing);
    if (full) {
      st.trace.used_witness_search = true;
      for (VarId v : missing) {
        st.trace.witness_bindings.push_back(st.sig.variable(v).name + " -> " +
                                            render_term(st.sig, full->at(v)));
      }
      resolved_hints.push_back(std::move(*full));
    }
  }

  st.enumerator = std::make_unique<GroundEnumerator>(st.sig, st.herbrand, resolved_hints);
  st.trace.ground_fast_path = st.herbrand.existentials.empty();

  if (!st.next_instance()) throw Error("empty Herbrand expansion");
  st.build_task(1);

  auto finish = [&](ProveStatus status, int deciding, Verdict3 v) {
    st.fill_trace(deciding, v);
    if (status == ProveStatus::Proved) st.validate_certificates();
    st.trace.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                 t0)
                           .count();
    return ProveResult{status, std::move(st.trace), std::move(st.sig)};
  };

  for (uint64_t n = 1;; ++n) {
    uint64_t consumed_this_round = 0;
    for (size_t k = 1; k <= n; ++k) {
      if (k > st.tasks.size()) {
        // line 13: the next instance set is prepared lazily; on the ground
        // fast path the expansion is a singleton and no further set exists.
        if (st.trace.ground_fast_path) break;
        if (k > st.instances.size() && !st.next_instance()) break;
        st.build_task(k);
      }
      PsiTask& task = st.tasks[k - 1];
      if (task.dead) continue;
      uint64_t grant = n * std::max<uint64_t>(cfg.ops_scale, 1);
      uint64_t left = grant;
      Verdict3 v = task.pump(left);
      task.granted += grant;  // fairness audit: budget made available
      consumed_this_round += grant - left;
      st.trace.rounds = n;
      if (v == Verdict3::True) {
        return finish(ProveStatus::Proved, static_cast<int>(k), v);
      }
      if (v == Verdict3::False) {
        if (st.trace.ground_fast_path) {
          return finish(ProveStatus::NotProvable, static_cast<int>(k), v);
        }
        task.dead = true;  // this instance set is settled; later ones may differ
      }
    }
    st.trace.rounds = n;
    if (cfg.max_rounds != 0 && n >= cfg.max_rounds) {
      return finish(ProveStatus::Timeout, 0, Verdict3::Unknown);
    }
    if (st.trace.ground_fast_path && consumed_this_round == 0 && n > 1) {
      // Bounded completion ran dry without a verdict: no further progress is
      // possible for a singleton expansion.
      return finish(ProveStatus::Timeout, 0, Verdict3::Unknown);
    }
  }
}

}  // namespace opstat
