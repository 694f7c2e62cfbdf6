#include "opstat/herbrand.hpp"

#include <algorithm>

namespace opstat {

HerbrandResult herbrandise(const Signature& sig, const Formula& f) {
  HerbrandResult out;
  out.extended_signature = sig;
  Signature& esig = out.extended_signature;

  // Universal closure of free variables first, then prenex.
  Formula closed = f;
  for (VarId v : free_vars(f)) closed = mk_forall(esig, v, closed);
  auto [prefix, matrix] = prenex_parts(esig, closed);

  // Apply the two Herbrandisation rules left to right: a universal variable
  // with no existentials to its left becomes a fresh constant, otherwise a
  // fresh function of those existentials.
  std::map<VarId, Term> bindings;
  for (const PrefixEntry& e : prefix) {
    if (e.quant == Quantifier::Exists) {
      out.existentials.push_back(e.var);
      continue;
    }
    const VarInfo& vi = esig.variable(e.var);
    IntroducedSymbol intro;
    intro.replaced = e.var;
    if (out.existentials.empty()) {
      ConstId c = esig.fresh_constant(vi.name, vi.sort);
      intro.name = esig.constant(c).name;
      intro.is_function = false;
      intro.const_id = c;
      bindings.emplace(e.var, mk_const(esig, c));
    } else {
      FunctionSort fs;
      std::vector<Term> args;
      for (VarId x : out.existentials) {
        fs.args.push_back(esig.variable(x).sort);
        args.push_back(mk_var(esig, x));
      }
      fs.result = vi.sort;
      FuncId fn = esig.fresh_function(vi.name, std::move(fs));
      intro.name = esig.function(fn).name;
      intro.is_function = true;
      intro.func_id = fn;
      bindings.emplace(e.var, mk_apply(esig, fn, std::move(args)));
    }
    out.introduced.push_back(std::move(intro));
  }

  out.matrix = bindings.empty() ? matrix : substitute(esig, matrix, bindings);
  std::vector<PrefixEntry> eprefix;
  for (VarId v : out.existentials) eprefix.push_back(PrefixEntry{Quantifier::Exists, v});
  out.sentence = rebuild_prenex(esig, eprefix, out.matrix);
  return out;
}

namespace {

/// Odometer over vectors of length n with entries in [0, bound(i)); advances
/// rightmost-fastest. Returns false on wrap-around.
bool advance_odometer(std::vector<size_t>& idx, const std::vector<size_t>& bounds) {
  size_t pos = idx.size();
  while (pos-- > 0) {
    if (++idx[pos] < bounds[pos]) return true;
    idx[pos] = 0;
    if (pos == 0) break;
  }
  return false;
}

/// Compositions of `total` into n parts, each part >= 1, in lexicographic
/// order. Returns false when the last composition was reached.
bool advance_composition_vec(std::vector<uint32_t>& parts, uint32_t total) {
  size_t n = parts.size();
  if (n <= 1) return false;
  // Find rightmost position (excluding the last) that can take one more unit
  // while leaving at least 1 for each later position.
  for (size_t pos = n - 1; pos-- > 0;) {
    uint32_t used = 0;
    for (size_t i = 0; i <= pos; ++i) used += parts[i];
    if (used + 1 + (n - pos - 1) <= total) {
      ++parts[pos];
      for (size_t i = pos + 1; i + 1 < n; ++i) parts[i] = 1;
      uint32_t consumed = used + 1 + static_cast<uint32_t>(n - pos - 2);
      parts[n - 1] = total - consumed;
      return true;
    }
  }
  return false;
}

void first_composition(std::vector<uint32_t>& parts, uint32_t total) {
  size_t n = parts.size();
  for (size_t i = 0; i + 1 < n; ++i) parts[i] = 1;
  parts[n - 1] = total - static_cast<uint32_t>(n - 1);
}

}  // namespace

const std::vector<Term>& GroundTerms::of_size(Sort sort, uint32_t n) {
  auto key = std::make_pair(sort, n);
  auto it = by_size_.find(key);
  if (it != by_size_.end()) return it->second;
  // Reserve the slot first: recursive calls only ever ask for strictly
  // smaller sizes, so no cycle is possible.
  std::vector<Term> result;
  if (n == 1) {
    // Non-zero constants first, then zero constants, each in id order; zero
    // instantiations are rarely the interesting ones.
    for (int pass = 0; pass < 2; ++pass) {
      for (uint32_t c = 0; c < sig_->constant_count(); ++c) {
        const ConstInfo& info = sig_->constant(ConstId{c});
        if (info.sort == sort && info.is_zero == (pass == 1)) {
          result.push_back(mk_const(*sig_, ConstId{c}));
        }
      }
    }
  } else {
    for (uint32_t fi = 0; fi < sig_->function_count(); ++fi) {
      FuncId f{fi};
      const FuncInfo& info = sig_->function(f);
      if (info.sort.result != sort) continue;
      size_t arity = info.sort.args.size();
      if (n < 1 + arity) continue;
      std::vector<uint32_t> parts(arity);
      first_composition(parts, n - 1);
      do {
        std::vector<size_t> bounds(arity);
        bool feasible = true;
        for (size_t i = 0; i < arity; ++i) {
          bounds[i] = of_size(info.sort.args[i], parts[i]).size();
          if (bounds[i] == 0) feasible = false;
        }
        if (!feasible) continue;
        std::vector<size_t> idx(arity, 0);
        do {
          std::vector<Term> args;
          args.reserve(arity);
          for (size_t i = 0; i < arity; ++i) {
            args.push_back(of_size(info.sort.args[i], parts[i])[idx[i]]);
          }
          result.push_back(mk_apply(*sig_, f, std::move(args)));
        } while (advance_odometer(idx, bounds));
      } while (advance_composition_vec(parts, n - 1));
    }
  }
  return by_size_.emplace(key, std::move(result)).first->second;
}

Term GroundTerms::at(Sort sort, size_t index) {
  uint32_t n = 1;
  size_t skipped = 0;
  for (;;) {
    const auto& v = of_size(sort, n);
    if (index < skipped + v.size()) return v[index - skipped];
    skipped += v.size();
    ++n;
    if (n > 4096) throw EmptySortUniverseError("sort has too few ground terms");
  }
}

bool GroundTerms::empty_universe(Sort sort) {
  std::set<Sort> inhabited;
  for (uint32_t c = 0; c < sig_->constant_count(); ++c) {
    inhabited.insert(sig_->constant(ConstId{c}).sort);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t fi = 0; fi < sig_->function_count(); ++fi) {
      const FuncInfo& info = sig_->function(FuncId{fi});
      if (inhabited.count(info.sort.result)) continue;
      bool all = true;
      for (const Sort& a : info.sort.args) {
        if (!inhabited.count(a)) {
          all = false;
          break;
        }
      }
      if (all) {
        inhabited.insert(info.sort.result);
        changed = true;
      }
    }
  }
  return !inhabited.count(sort);
}

GroundEnumerator::GroundEnumerator(const Signature& sig, const HerbrandResult& h,
                                   std::vector<std::map<VarId, Term>> hints)
    : sig_(sig), matrix_(h.matrix), vars_(h.existentials), hints_(std::move(hints)), terms_(sig_) {
  for (VarId v : vars_) sorts_.push_back(sig_.variable(v).sort);
  for (Sort s : sorts_) {
    if (terms_.empty_universe(s)) {
      throw EmptySortUniverseError("no ground terms of sort (" + sig_.object_name(s.src) + "," +
                                   sig_.object_name(s.tgt) + ")");
    }
  }
  for (const auto& hint : hints_) {
    for (const auto& [v, t] : hint) {
      if (std::find(vars_.begin(), vars_.end(), v) == vars_.end()) {
        throw InputError("hint binds a variable that is not existentially quantified");
      }
      if (!is_ground(t)) throw InputError("hint term is not ground");
      if (t.sort() != sig_.variable(v).sort) throw SortError("hint term sort mismatch");
    }
    for (VarId v : vars_) {
      if (!hint.count(v)) {
        throw InputError("hint does not bind variable '" + sig_.variable(v).name + "'");
      }
    }
  }
  if (!vars_.empty()) {
    total_ = static_cast<uint32_t>(vars_.size());
    sizes_.assign(vars_.size(), 1);
    composition_fresh_ = true;
  }
}

std::optional<std::vector<Term>> GroundEnumerator::next_tuple() {
  size_t m = vars_.size();
  uint32_t stale = 0;
  for (;;) {
    if (composition_fresh_) {
      composition_fresh_ = false;
      cursor_.assign(m, 0);
      bool feasible = true;
      for (size_t i = 0; i < m; ++i) {
        if (terms_.of_size(sorts_[i], sizes_[i]).empty()) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        std::vector<Term> tuple;
        for (size_t i = 0; i < m; ++i) tuple.push_back(terms_.of_size(sorts_[i], sizes_[i])[0]);
        return tuple;
      }
    } else {
      std::vector<size_t> bounds(m);
      for (size_t i = 0; i < m; ++i) bounds[i] = terms_.of_size(sorts_[i], sizes_[i]).size();
      bool skip = false;
      for (size_t i = 0; i < m; ++i) {
        if (bounds[i] == 0) skip = true;
      }
      if (!skip && advance_odometer(cursor_, bounds)) {
        std::vector<Term> tuple;
        for (size_t i = 0; i < m; ++i) {
          tuple.push_back(terms_.of_size(sorts_[i], sizes_[i])[cursor_[i]]);
        }
        return tuple;
      }
    }
    if (!advance_composition_vec(sizes_, total_)) {
      ++total_;
      if (++stale > 4096) {
        throw EmptySortUniverseError("ground term enumeration made no progress");
      }
      first_composition(sizes_, total_);
    }
    composition_fresh_ = true;
  }
}

std::optional<GroundInstance> GroundEnumerator::next() {
  if (hint_pos_ < hints_.size()) {
    const auto& hint = hints_[hint_pos_++];
    GroundInstance gi;
    gi.instantiation = hint;
    gi.sentence = hint.empty() ? matrix_ : substitute(sig_, matrix_, hint);
    gi.from_hint = true;
    return gi;
  }
  if (vars_.empty()) {
    if (ground_done_) return std::nullopt;
    ground_done_ = true;
    return GroundInstance{matrix_, {}, false};
  }
  auto tuple = next_tuple();
  if (!tuple) return std::nullopt;
  GroundInstance gi;
  for (size_t i = 0; i < vars_.size(); ++i) gi.instantiation.emplace(vars_[i], (*tuple)[i]);
  gi.sentence = substitute(sig_, matrix_, gi.instantiation);
  return gi;
}

}  // namespace opstat
