#include <doctest.h>

#include "support.hpp"
#include "opstat/ncpoly.hpp"

using namespace opstat;
using test::SmallSig;

namespace {

NCPolynomial var_poly(Indet x) { return NCPolynomial::monomial({x}); }

}  // namespace

TEST_CASE("basic ring facts") {
  NCPolynomial x = var_poly(0), y = var_poly(1);
  CHECK((x + (-x)).is_zero());
  // noncommutativity
  CHECK(x * y != y * x);
  CHECK((x * y).terms().begin()->first == Word{0, 1});
  // (x+y)(x-y) = xx - xy + yx - yy
  NCPolynomial lhs = (x + y) * (x - y);
  NCPolynomial expected;
  expected.add_term({0, 0}, 1);
  expected.add_term({0, 1}, -1);
  expected.add_term({1, 0}, 1);
  expected.add_term({1, 1}, -1);
  CHECK(lhs == expected);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(5);
  auto random_poly = [&]() {
    NCPolynomial p;
    std::uniform_int_distribution<int> nterms(0, 3), len(0, 3), coeff(-3, 3), letter(0, 2);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      Word w;
      int l = len(rng);
      for (int k = 0; k < l; ++k) w.push_back(static_cast<Indet>(letter(rng)));
      p.add_term(w, coeff(rng));
    }
    return p;
  };
  NCPolynomial one = NCPolynomial::monomial({}, 1);
  for (int i = 0; i < 200; ++i) {
    NCPolynomial a = random_poly(), b = random_poly(), c = random_poly();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + NCPolynomial() == a);
    CHECK(a * one == a);
    CHECK(one * a == a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("translation of the five term constructors") {
  SmallSig s;
  IndeterminateTable tbl;
  // 0 = 0 gives the zero polynomial
  CHECK(literal_poly(s.sig, mk_zero(s.sig, s.uv), mk_zero(s.sig, s.uv), tbl).is_zero());
  // c + (-c) = 0 gives 0
  Term cc = mk_add(s.sig, s.tc(), mk_neg(s.sig, s.tc()));
  CHECK(literal_poly(s.sig, cc, mk_zero(s.sig, s.uv), tbl).is_zero());
  CHECK(tbl.size() == 1);  // only c was interned
}

TEST_CASE("identity-like constants stay ordinary indeterminates") {
  // x * iu = x: the translated difference must keep iu as a letter
  Signature sig;
  ObjectId u = sig.add_object("u");
  ObjectId v = sig.add_object("v");
  ConstId x = sig.add_constant("x", Sort{u, v});
  ConstId iu = sig.add_constant("iu", Sort{u, u});
  IndeterminateTable tbl;
  Term lhs = mk_mul(sig, mk_const(sig, x), mk_const(sig, iu));
  NCPolynomial p = literal_poly(sig, lhs, mk_const(sig, x), tbl);
  REQUIRE(tbl.size() == 2);
  Indet xi = *tbl.lookup(x);
  Indet ii = *tbl.lookup(iu);
  NCPolynomial expected;
  expected.add_term({xi, ii}, 1);
  expected.add_term({xi}, -1);
  CHECK(p == expected);  // in particular not x*1 - x = 0
}

TEST_CASE("translation is a ring homomorphism on random ground terms") {
  SmallSig s;
  std::mt19937 rng(31);
  for (int i = 0; i < 100; ++i) {
    IndeterminateTable tbl;
    Term a = test::random_ground_term(s.sig, s.uv, rng, 2);
    Term b = test::random_ground_term(s.sig, s.uv, rng, 2);
    Term m = test::random_ground_term(s.sig, s.vu, rng, 2);
    CHECK(translate_term(s.sig, mk_add(s.sig, a, b), tbl) ==
          translate_term(s.sig, a, tbl) + translate_term(s.sig, b, tbl));
    CHECK(translate_term(s.sig, mk_neg(s.sig, a), tbl) == -translate_term(s.sig, a, tbl));
    CHECK(translate_term(s.sig, mk_mul(s.sig, m, a), tbl) ==
          translate_term(s.sig, m, tbl) * translate_term(s.sig, a, tbl));
  }
}

TEST_CASE("translation rejects variables and non-arithmetic symbols") {
  SmallSig s;
  VarId x = s.sig.add_variable("x", s.uv);
  FuncId f = s.sig.add_function("f", FunctionSort{{s.uv}, s.uv});
  IndeterminateTable tbl;
  CHECK_THROWS_AS(translate_term(s.sig, mk_var(s.sig, x), tbl), NotGroundError);
  CHECK_THROWS_AS(translate_term(s.sig, mk_apply(s.sig, f, {s.tc()}), tbl), NonArithmeticError);
}

TEST_CASE("translation is independent of sorts") {
  // the same constant/operator skeleton over two different signatures gives
  // structurally identical polynomials
  Signature sig1;
  ObjectId u1 = sig1.add_object("u");
  ConstId a1 = sig1.add_constant("a", Sort{u1, u1});
  ConstId b1 = sig1.add_constant("b", Sort{u1, u1});

  Signature sig2;
  ObjectId u2 = sig2.add_object("u");
  ObjectId v2 = sig2.add_object("v");
  ConstId a2 = sig2.add_constant("a", Sort{u2, v2});
  ConstId b2 = sig2.add_constant("b", Sort{v2, u2});  // different shape, same skeleton a*b

  IndeterminateTable t1, t2;
  NCPolynomial p1 = translate_term(
      sig1, mk_mul(sig1, mk_const(sig1, a1), mk_const(sig1, b1)), t1);
  NCPolynomial p2 = translate_term(
      sig2, mk_mul(sig2, mk_const(sig2, b2), mk_const(sig2, a2)), t2);
  // first-appearance interning makes both equal to x0*x1
  CHECK(p1 == p2);
}

TEST_CASE("polynomial rendering") {
  std::vector<std::string> names{"x", "iu"};
  NCPolynomial p;
  p.add_term({0, 1}, 1);
  p.add_term({0}, -1);
  CHECK(render_poly(p, names) == "x*iu - x");
  NCPolynomial q;
  q.add_term({}, 7);
  q.add_term({1}, -3);
  CHECK(render_poly(q, names) == "- 3*iu + 7");
  CHECK(render_poly(NCPolynomial(), names) == "0");
}
