#include <doctest.h>

#include "support.hpp"
#include "opstat/ackermann.hpp"

using namespace opstat;
using test::SmallSig;

namespace {

// The worked single-symbol example: variables x,y of one sort, f unary on it,
//   (x != y) & f(x) = f(y) & (x != f(x) | f(y) != f(f(y)))
struct PaperExample {
  Signature sig;
  VarId x, y;
  FuncId f;
  Formula phi;
  Term tx, ty;

  PaperExample() {
    ObjectId u = sig.add_object("u");
    ObjectId v = sig.add_object("v");
    Sort uv{u, v};
    x = sig.add_variable("x", uv);
    y = sig.add_variable("y", uv);
    f = sig.add_function("f", FunctionSort{{uv}, uv});
    tx = mk_var(sig, x);
    ty = mk_var(sig, y);
    Term fx = mk_apply(sig, f, {tx});
    Term fy = mk_apply(sig, f, {ty});
    Term ffy = mk_apply(sig, f, {fy});
    phi = mk_and(mk_and(mk_not(mk_eq(tx, ty)), mk_eq(fx, fy)),
                 mk_or(mk_not(mk_eq(tx, fx)), mk_not(mk_eq(fy, ffy))));
  }
};

}  // namespace

TEST_CASE("formula without the symbol is unchanged") {
  PaperExample ex;
  Formula g = mk_eq(ex.tx, ex.ty);
  AckermannResult res = ackermann_reduce(ex.sig, g, ex.f);
  CHECK(equal_formulas(res.result, g));
  CHECK(res.table.empty());
  CHECK(res.fc.null());
}

TEST_CASE("worked example: flat formula and the three constraints") {
  PaperExample ex;
  AckermannResult res = ackermann_reduce(ex.sig, ex.phi, ex.f);
  const Signature& esig = res.extended_signature;

  // three distinct instances: f(x), f(y), f(f(y)) in traversal order
  REQUIRE(res.table.size() == 3);
  Term c1 = mk_const(esig, res.table[0].constant);
  Term c2 = mk_const(esig, res.table[1].constant);
  Term c3 = mk_const(esig, res.table[2].constant);
  CHECK(equal_terms(res.table[0].original, mk_apply(ex.sig, ex.f, {ex.tx})));
  CHECK(equal_terms(res.table[1].original, mk_apply(ex.sig, ex.f, {ex.ty})));
  REQUIRE(res.table[2].flat_args.size() == 1);
  // nested instance: the inner f(y) was already replaced by c2
  CHECK(equal_terms(res.table[2].flat_args[0], c2));

  Formula expected_flat =
      mk_and(mk_and(mk_not(mk_eq(ex.tx, ex.ty)), mk_eq(c1, c2)),
             mk_or(mk_not(mk_eq(ex.tx, c1)), mk_not(mk_eq(c2, c3))));
  CHECK(equal_formulas(res.flat, expected_flat));

  // m(m-1)/2 = 3 functional-consistency implications
  REQUIRE(res.fc_units.size() == 3);
  CHECK(equal_formulas(res.fc_units[0], mk_implies(mk_eq(ex.tx, ex.ty), mk_eq(c1, c2))));
  CHECK(equal_formulas(res.fc_units[1], mk_implies(mk_eq(ex.tx, c2), mk_eq(c1, c3))));
  CHECK(equal_formulas(res.fc_units[2], mk_implies(mk_eq(ex.ty, c2), mk_eq(c2, c3))));

  REQUIRE(!res.fc.null());
  CHECK(equal_formulas(res.result, mk_implies(res.fc, res.flat)));
  CHECK_NOTHROW(check_sorts(esig, res.result));
}

TEST_CASE("identical instances share a constant") {
  PaperExample ex;
  Term fx = mk_apply(ex.sig, ex.f, {ex.tx});
  Formula g = mk_and(mk_eq(fx, ex.ty), mk_eq(fx, ex.tx));
  AckermannResult res = ackermann_reduce(ex.sig, g, ex.f);
  CHECK(res.table.size() == 1);
  CHECK(res.fc_units.empty());
  CHECK(equal_formulas(res.result, res.flat));
}

TEST_CASE("arithmetic symbols are off limits") {
  SmallSig s;
  Formula g = mk_eq(mk_add(s.sig, s.tc(), s.td()), s.tc());
  CHECK_THROWS_AS(ackermann_reduce(s.sig, g, s.sig.add_symbol(s.uv)), ArithmeticSymbolError);
}

TEST_CASE("quantified input is rejected") {
  PaperExample ex;
  Formula q = mk_forall(ex.sig, ex.x, ex.phi);
  CHECK_THROWS_AS(ackermann_reduce(ex.sig, q, ex.f), NotQuantifierFreeError);
  CHECK_THROWS_AS(ackermann_reduce_all(ex.sig, q), NotQuantifierFreeError);
}

TEST_CASE("reduce_all removes nested distinct symbols innermost first") {
  SmallSig s;
  FuncId g = s.sig.add_function("g", FunctionSort{{s.uu}, s.uv});
  FuncId hfn = s.sig.add_function("h", FunctionSort{{s.uv}, s.uu});
  // g(h(c)) = c
  Term hc = mk_apply(s.sig, hfn, {s.tc()});
  Term ghc = mk_apply(s.sig, g, {hc});
  Formula f = mk_eq(ghc, s.tc());
  AckermannResult res = ackermann_reduce_all(s.sig, f);
  REQUIRE(res.table.size() == 2);
  // innermost h(c) is flattened first
  CHECK(res.table[0].fn == hfn);
  CHECK(res.table[1].fn == g);
  CHECK(equal_terms(res.table[1].flat_args[0],
                    mk_const(res.extended_signature, res.table[0].constant)));
  CHECK(is_ground_sentence(res.result));
  CHECK(is_arithmetic(res.extended_signature, res.result));
  CHECK(res.fc_units.empty());
}

TEST_CASE("arithmetic ground sentences pass through reduce_all") {
  SmallSig s;
  Formula f = mk_eq(mk_add(s.sig, s.tc(), mk_neg(s.sig, s.tc())), mk_zero(s.sig, s.uv));
  AckermannResult res = ackermann_reduce_all(s.sig, f);
  CHECK(equal_formulas(res.result, f));
  CHECK(res.table.empty());
}

TEST_CASE("output is ground iff input was; replay recovers the input") {
  PaperExample ex;
  AckermannResult res = ackermann_reduce(ex.sig, ex.phi, ex.f);
  CHECK(!is_ground_sentence(res.flat));  // x,y still free

  // substituting constants back for the instance constants recovers phi up
  // to shared-constant identification
  Signature esig = res.extended_signature;
  std::map<VarId, Term> none;
  Formula replayed = res.flat;
  // replace constants by original instances, innermost last
  for (size_t i = res.table.size(); i-- > 0;) {
    // build replacement formula by structural walk
    struct Sub {
      const Signature& sig;
      ConstId from;
      Term to;
      Term walk_t(const Term& t) {
        if (t.is_const() && t.constant() == from) return to;
        if (!t.is_apply()) return t;
        std::vector<Term> args;
        for (const Term& a : t.args()) args.push_back(walk_t(a));
        return mk_apply(sig, t.func(), std::move(args));
      }
      Formula walk(const Formula& f) {
        switch (f.kind()) {
          case Formula::Kind::Eq:
            return mk_eq(walk_t(f.lhs()), walk_t(f.rhs()));
          case Formula::Kind::Not:
            return mk_not(walk(f.child()));
          default:
            return mk_binary(f.kind(), walk(f.child(0)), walk(f.child(1)));
        }
      }
    } sub{esig, res.table[i].constant, res.table[i].original};
    replayed = sub.walk(replayed);
  }
  CHECK(equal_formulas(replayed, ex.phi));
}

TEST_CASE("overloads keyed by sort never form cross-sort constraints") {
  // star on (u,u) and on (v,v): instances at different sorts are different
  // symbols, so no functional-consistency pair relates them
  SmallSig s;
  FuncId star_uu = s.sig.add_function("star", FunctionSort{{s.uu}, s.uu});
  FuncId star_vv = s.sig.add_function("star", FunctionSort{{s.vv}, s.vv});
  ConstId k = s.sig.add_constant("k", s.vv);
  Formula f = mk_and(mk_eq(mk_apply(s.sig, star_uu, {s.te()}), s.te()),
                     mk_eq(mk_apply(s.sig, star_vv, {mk_const(s.sig, k)}), mk_const(s.sig, k)));
  AckermannResult res = ackermann_reduce_all(s.sig, f);
  CHECK(res.table.size() == 2);
  CHECK(res.fc_units.empty());  // one instance per sorted symbol
}

TEST_CASE("persistent context reuses constants for repeated instances") {
  PaperExample ex;
  AckContext ctx;
  AckermannResult r1 = ackermann_reduce(ex.sig, ex.phi, ex.f, true, &ctx);
  AckermannResult r2 =
      ackermann_reduce(r1.extended_signature, ex.phi, ex.f, true, &ctx);
  REQUIRE(r1.table.size() == r2.table.size());
  for (size_t i = 0; i < r1.table.size(); ++i) {
    CHECK(r1.table[i].constant == r2.table[i].constant);
  }
  CHECK(equal_formulas(r1.result, r2.result));
}
