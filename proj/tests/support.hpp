#pragma once

#include <random>

#include "opstat/herbrand.hpp"
#include "opstat/logic.hpp"

namespace opstat::test {

/// Two objects u, v with a handful of constants; the shared fixture most
/// tests build formulas over.
struct SmallSig {
  Signature sig;
  ObjectId u, v;
  Sort uu, uv, vu, vv;
  ConstId c, d, e;  // c,d : (u,v), e : (u,u)

  SmallSig() {
    u = sig.add_object("u");
    v = sig.add_object("v");
    uu = Sort{u, u};
    uv = Sort{u, v};
    vu = Sort{v, u};
    vv = Sort{v, v};
    c = sig.add_constant("c", uv);
    d = sig.add_constant("d", uv);
    e = sig.add_constant("e", uu);
  }

  Term tc() const { return mk_const(sig, c); }
  Term td() const { return mk_const(sig, d); }
  Term te() const { return mk_const(sig, e); }
};

/// Uniform random ground term of the requested sort, built downward from
/// arithmetic symbols and the available constants.
inline Term random_ground_term(const Signature& sig, Sort sort, std::mt19937& rng, int depth) {
  std::vector<ConstId> consts;
  for (uint32_t i = 0; i < sig.constant_count(); ++i) {
    if (sig.constant(ConstId{i}).sort == sort) consts.push_back(ConstId{i});
  }
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 3);
  switch (pick(rng)) {
    case 1:
      return mk_neg(sig, random_ground_term(sig, sort, rng, depth - 1));
    case 2:
      return mk_add(sig, random_ground_term(sig, sort, rng, depth - 1),
                    random_ground_term(sig, sort, rng, depth - 1));
    case 3: {
      // compose through a middle object
      std::uniform_int_distribution<uint32_t> obj(0, static_cast<uint32_t>(sig.object_count() - 1));
      ObjectId w{obj(rng)};
      Term left = random_ground_term(sig, Sort{w, sort.tgt}, rng, depth - 1);
      Term right = random_ground_term(sig, Sort{sort.src, w}, rng, depth - 1);
      return mk_mul(sig, left, right);
    }
    default: {
      if (consts.empty()) return mk_zero(sig, sort);
      std::uniform_int_distribution<size_t> ci(0, consts.size());
      size_t i = ci(rng);
      if (i == consts.size()) return mk_zero(sig, sort);
      return mk_const(sig, consts[i]);
    }
  }
}

/// Random quantifier-free formula over ground equations.
inline Formula random_ground_formula(const Signature& sig, const std::vector<Sort>& sorts,
                                     std::mt19937& rng, int depth) {
  if (depth <= 0) {
    std::uniform_int_distribution<size_t> si(0, sorts.size() - 1);
    Sort s = sorts[si(rng)];
    return mk_eq(random_ground_term(sig, s, rng, 1), random_ground_term(sig, s, rng, 1));
  }
  std::uniform_int_distribution<int> pick(0, 4);
  switch (pick(rng)) {
    case 0:
      return mk_not(random_ground_formula(sig, sorts, rng, depth - 1));
    case 1:
      return mk_and(random_ground_formula(sig, sorts, rng, depth - 1),
                    random_ground_formula(sig, sorts, rng, depth - 1));
    case 2:
      return mk_or(random_ground_formula(sig, sorts, rng, depth - 1),
                   random_ground_formula(sig, sorts, rng, depth - 1));
    case 3:
      return mk_implies(random_ground_formula(sig, sorts, rng, depth - 1),
                        random_ground_formula(sig, sorts, rng, depth - 1));
    default:
      return random_ground_formula(sig, sorts, rng, 0);
  }
}

}  // namespace opstat::test
