#include <doctest.h>

#include "support.hpp"
#include "opstat/idealise.hpp"

using namespace opstat;
using test::SmallSig;

TEST_CASE("trivial clause verdicts") {
  SmallSig s;
  IdealiseContext ctx;
  SUBCASE("t = t is true with an empty certificate") {
    Clause c;
    c.positives.push_back(Literal{s.tc(), s.tc()});
    ClauseIdealisation r = idealise_clause(ctx, s.sig, c, 100);
    CHECK(r.verdict == Verdict3::True);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->summands.empty());
  }
  SUBCASE("s != t | s = t is true by a one-summand certificate") {
    Clause c;
    c.negatives.push_back(Literal{s.tc(), s.td()});
    c.positives.push_back(Literal{s.tc(), s.td()});
    ClauseIdealisation r = idealise_clause(ctx, s.sig, c, 100);
    CHECK(r.verdict == Verdict3::True);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->summands.size() == 1);
  }
  SUBCASE("no positive literal is immediately false") {
    Clause c;
    c.negatives.push_back(Literal{s.tc(), s.td()});
    ClauseIdealisation r = idealise_clause(ctx, s.sig, c, 100);
    CHECK(r.verdict == Verdict3::False);
  }
  SUBCASE("non-ground clauses are rejected") {
    VarId x = s.sig.add_variable("x", s.uv);
    Clause c;
    c.positives.push_back(Literal{mk_var(s.sig, x), s.tc()});
    CHECK_THROWS_AS(idealise_clause(ctx, s.sig, c, 100), NotGroundError);
  }
}

TEST_CASE("sentence idealisation") {
  SmallSig s;
  SUBCASE("t = t is true") {
    IdealiseContext ctx;
    auto r = idealise_sentence(ctx, s.sig, mk_eq(s.tc(), s.tc()), 1000);
    CHECK(r.verdict == Verdict3::True);
  }
  SUBCASE("claim of an unrelated identity is false with finite bases") {
    IdealiseContext ctx;
    // c = d follows from nothing
    auto r = idealise_sentence(ctx, s.sig, mk_eq(s.tc(), s.td()), 1000);
    CHECK(r.verdict == Verdict3::False);
  }
  SUBCASE("non-arithmetic sentences are rejected") {
    IdealiseContext ctx;
    FuncId f = s.sig.add_function("f", FunctionSort{{s.uv}, s.uv});
    Formula phi = mk_eq(mk_apply(s.sig, f, {s.tc()}), mk_apply(s.sig, f, {s.tc()}));
    CHECK_THROWS_AS(idealise_sentence(ctx, s.sig, phi, 100), NonArithmeticError);
  }
}

namespace {

// random arithmetic ground sentence over the fixture's constants
Formula random_sentence(const SmallSig& s, std::mt19937& rng, int depth) {
  std::vector<Sort> sorts{s.uv, s.uu};
  return test::random_ground_formula(s.sig, sorts, rng, depth);
}

// random membership-true clause: negatives generate an ideal, the positive
// literal's difference is a small combination of the generators, shifted by
// the positive side
Formula random_true_sentence(const SmallSig& s, std::mt19937& rng) {
  Signature sig = s.sig;
  Term g1l = test::random_ground_term(sig, s.uv, rng, 1);
  Term g1r = test::random_ground_term(sig, s.uv, rng, 1);
  Term g2l = test::random_ground_term(sig, s.uu, rng, 1);
  Term g2r = test::random_ground_term(sig, s.uu, rng, 1);
  // claim: g1l * g2l = g1r * g2l has certificate (g1l - g1r) * g2l over the
  // first generator alone once the right cancellations exist; simpler: build
  // the claim directly as a consequence: from g1l = g1r infer g1l*g2l = g1r*g2l
  Formula a1 = mk_eq(g1l, g1r);
  Formula a2 = mk_eq(g2l, g2r);
  Formula claim = mk_eq(mk_mul(sig, g1l, g2l), mk_mul(sig, g1r, g2r));
  return mk_implies(mk_and(a1, a2), claim);
}

}  // namespace

TEST_CASE("monotonicity of the idealisation") {
  SmallSig s;
  std::mt19937 rng(404);
  int true_count = 0;
  for (int i = 0; i < 60; ++i) {
    Formula phi = random_true_sentence(s, rng);
    IdealiseContext c1;
    auto r1 = idealise_sentence(c1, s.sig, phi, 50000);
    REQUIRE(r1.verdict == Verdict3::True);
    ++true_count;

    Formula psi = random_sentence(s, rng, 2);
    IdealiseContext c2;
    auto r2 = idealise_sentence(c2, s.sig, mk_or(phi, psi), 50000);
    CHECK(r2.verdict == Verdict3::True);

    Formula phi2 = random_true_sentence(s, rng);
    IdealiseContext c3;
    auto r3 = idealise_sentence(c3, s.sig, mk_and(phi, phi2), 50000);
    CHECK(r3.verdict == Verdict3::True);
  }
  CHECK(true_count == 60);
}

TEST_CASE("axiom instances translate to zero and drop out") {
  SmallSig s;
  std::mt19937 rng(7771);
  // the seven preadditive-semicategory schemata, instantiated with random
  // ground terms
  auto instances = [&](int i) -> Formula {
    Term x = test::random_ground_term(s.sig, s.vu, rng, 1);
    Term y = test::random_ground_term(s.sig, s.uv, rng, 1);
    Term a = test::random_ground_term(s.sig, s.uu, rng, 1);
    Term b = test::random_ground_term(s.sig, s.uu, rng, 1);
    Term c = test::random_ground_term(s.sig, s.uu, rng, 1);
    switch (i) {
      case 0:  // x(y a) = (x y) a  with x:(v,u)... composition shapes
        return mk_eq(mk_mul(s.sig, x, mk_mul(s.sig, y, a)),
                     mk_mul(s.sig, mk_mul(s.sig, x, y), a));
      case 1:
        return mk_eq(mk_add(s.sig, a, mk_add(s.sig, b, c)),
                     mk_add(s.sig, mk_add(s.sig, a, b), c));
      case 2:
        return mk_eq(mk_add(s.sig, a, mk_zero(s.sig, s.uu)), a);
      case 3:
        return mk_eq(mk_add(s.sig, a, mk_neg(s.sig, a)), mk_zero(s.sig, s.uu));
      case 4:
        return mk_eq(mk_add(s.sig, a, b), mk_add(s.sig, b, a));
      case 5:
        return mk_eq(mk_mul(s.sig, y, mk_add(s.sig, a, b)),
                     mk_add(s.sig, mk_mul(s.sig, y, a), mk_mul(s.sig, y, b)));
      default:
        return mk_eq(mk_mul(s.sig, mk_add(s.sig, y, y), a),
                     mk_add(s.sig, mk_mul(s.sig, y, a), mk_mul(s.sig, y, a)));
    }
  };
  for (int i = 0; i < 7; ++i) {
    for (int rep = 0; rep < 10; ++rep) {
      Formula alpha = instances(i);
      IndeterminateTable tbl;
      CHECK(literal_poly(s.sig, alpha.lhs(), alpha.rhs(), tbl).is_zero());

      Formula phi = random_sentence(s, rng, 2);
      IdealiseContext ca, cb;
      auto va = idealise_sentence(ca, s.sig, mk_or(mk_not(alpha), phi), 20000);
      auto vb = idealise_sentence(cb, s.sig, phi, 20000);
      CHECK(va.verdict == vb.verdict);
    }
  }
}

TEST_CASE("cnf choice does not change the verdict") {
  SmallSig s;
  std::mt19937 rng(5150);
  for (int i = 0; i < 40; ++i) {
    Formula phi = random_sentence(s, rng, 2);
    Formula psi = random_sentence(s, rng, 2);
    // two logically equivalent presentations
    Formula f1 = mk_or(phi, psi);
    Formula f2 = mk_not(mk_and(mk_not(phi), mk_not(psi)));
    IdealiseContext c1, c2;
    auto r1 = idealise_sentence(c1, s.sig, f1, 20000);
    auto r2 = idealise_sentence(c2, s.sig, f2, 20000);
    if (r1.verdict != Verdict3::Unknown && r2.verdict != Verdict3::Unknown) {
      CHECK(r1.verdict == r2.verdict);
    }
  }
}

TEST_CASE("incremental idealisation agrees with the direct one") {
  SmallSig s;
  std::mt19937 rng(808);
  SUBCASE("zero assumptions reduces to the plain sentence") {
    for (int i = 0; i < 20; ++i) {
      Formula phi = random_sentence(s, rng, 2);
      IdealiseContext c1, c2;
      auto r1 = idealise_incremental(c1, s.sig, {}, phi, 20000, 50);
      auto r2 = idealise_sentence(c2, s.sig, phi, 20000);
      if (r1.verdict != Verdict3::Unknown && r2.verdict != Verdict3::Unknown) {
        CHECK(r1.verdict == r2.verdict);
      }
    }
  }
  SUBCASE("with implication assumptions") {
    for (int i = 0; i < 20; ++i) {
      Formula h = random_sentence(s, rng, 0);
      Formula c = random_sentence(s, rng, 0);
      Formula assumption = mk_implies(h, c);
      Formula claim = random_true_sentence(s, rng);
      IdealiseContext c1, c2;
      auto r1 = idealise_incremental(c1, s.sig, {assumption}, claim, 50000, 20);
      auto r2 = idealise_sentence(c2, s.sig, mk_implies(assumption, claim), 50000);
      // incremental true must imply direct true
      if (r1.verdict == Verdict3::True) CHECK(r2.verdict == Verdict3::True);
      if (r1.verdict != Verdict3::Unknown && r2.verdict != Verdict3::Unknown) {
        CHECK(r1.verdict == r2.verdict);
      }
    }
  }
}

TEST_CASE("membership test counter counts each candidate once") {
  SmallSig s;
  IdealiseContext ctx;
  Clause c;
  c.negatives.push_back(Literal{s.tc(), s.td()});
  c.positives.push_back(Literal{s.tc(), s.td()});
  ClauseTask task(ctx, s.sig, c);
  uint64_t ops = 100;
  task.pump(ops);
  uint64_t after_first = ctx.membership_tests.load();
  CHECK(after_first >= 1);
  uint64_t ops2 = 100;
  task.pump(ops2);
  CHECK(ctx.membership_tests.load() == after_first);
}
