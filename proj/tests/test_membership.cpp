#include <doctest.h>

#include "support.hpp"
#include "opstat/membership.hpp"

using namespace opstat;

namespace {

NCPolynomial mono(Word w, Coeff c = 1) { return NCPolynomial::monomial(std::move(w), std::move(c)); }

// Independent membership oracle: integer row echelon of the lattice spanned
// by a * g * b for all cofactor words up to a degree bound. Exact over Z via
// extended-gcd pivot combination; entirely separate from the completion code
// it is used to check.
class CofactorLattice {
public:
  CofactorLattice(const std::vector<NCPolynomial>& gens, uint32_t indets, uint32_t cofactor_deg) {
    std::vector<Word> words = words_up_to(indets, cofactor_deg);
    for (const NCPolynomial& g : gens) {
      for (const Word& a : words) {
        for (const Word& b : words) {
          insert(g.framed(a, b));
        }
      }
    }
  }

  bool contains(const NCPolynomial& f) const {
    NCPolynomial p = f;
    while (!p.is_zero()) {
      auto lead = std::prev(p.terms().end());
      auto it = pivots_.find(lead->first);
      if (it == pivots_.end()) return false;
      const Coeff& d = std::prev(it->second.terms().end())->second;
      if (lead->second % d != 0) return false;
      p -= it->second.scaled(lead->second / d);
    }
    return true;
  }

private:
  static std::vector<Word> words_up_to(uint32_t indets, uint32_t deg) {
    std::vector<Word> out{{}};
    size_t start = 0;
    for (uint32_t d = 1; d <= deg; ++d) {
      size_t end = out.size();
      for (size_t i = start; i < end; ++i) {
        for (uint32_t x = 0; x < indets; ++x) {
          Word w = out[i];
          w.push_back(x);
          out.push_back(std::move(w));
        }
      }
      start = end;
    }
    return out;
  }

  static Coeff egcd(Coeff a, Coeff b, Coeff& s, Coeff& t) {
    Coeff r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      Coeff q = r0 / r1;
      std::swap(r0 -= q * r1, r1);
      std::swap(s0 -= q * s1, s1);
      std::swap(t0 -= q * t1, t1);
    }
    if (r0 < 0) {
      r0 = -r0;
      s0 = -s0;
      t0 = -t0;
    }
    s = s0;
    t = t0;
    return r0;
  }

  void insert(NCPolynomial p) {
    while (!p.is_zero()) {
      auto lead = std::prev(p.terms().end());
      Word w = lead->first;
      Coeff c = lead->second;
      auto it = pivots_.find(w);
      if (it == pivots_.end()) {
        pivots_.emplace(std::move(w), std::move(p));
        return;
      }
      const Coeff d = std::prev(it->second.terms().end())->second;
      if (c % d == 0) {
        p -= it->second.scaled(c / d);
        continue;
      }
      Coeff s, t;
      Coeff g = egcd(d, c, s, t);
      NCPolynomial combo = it->second.scaled(s) + p.scaled(t);
      NCPolynomial old = it->second;
      it->second = combo;
      p -= combo.scaled(c / g);
      insert(old - combo.scaled(d / g));
    }
  }

  std::map<Word, NCPolynomial> pivots_;
};

}  // namespace

TEST_CASE("word order is a multiplicative total order") {
  MonomialOrder o = MonomialOrder::deglex(3);
  CHECK(o.compare({0}, {1}) > 0);  // earlier precedence = larger
  CHECK(o.compare({1}, {0, 0}) < 0);  // degree first
  CHECK(o.compare({0, 1}, {1, 0}) > 0);
  CHECK(o.compare({0, 1}, {0, 1}) == 0);
  // compatibility with concatenation on a sample
  std::vector<Word> ws{{}, {0}, {1}, {2, 0}, {1, 1}};
  for (const Word& a : ws) {
    for (const Word& b : ws) {
      if (o.compare(a, b) >= 0) continue;
      for (const Word& u : ws) {
        for (const Word& v : ws) {
          CHECK(o.compare(concat(u, concat(a, v)), concat(u, concat(b, v))) < 0);
        }
      }
    }
  }
  SUBCASE("elimination block dominates") {
    MonomialOrder e = MonomialOrder::deglex(3);
    e.elimination = {2};
    CHECK(e.compare({2}, {0, 0, 0, 0}) > 0);
    CHECK(e.compare({0, 2}, {2}) > 0);
    CHECK(e.has_eliminated({0, 2}));
    CHECK(!e.has_eliminated({0, 1}));
  }
}

TEST_CASE("reduce: basic shapes") {
  MonomialOrder o = MonomialOrder::deglex(2);  // 0 = a, 1 = b
  NCPolynomial amb = mono({0}) - mono({1});    // a - b

  SUBCASE("a generator reduces to zero against itself") {
    CompletionState st(IdealPresentation{{amb}, o});
    auto red = reduce(amb, st);
    CHECK(red.remainder.is_zero());
    CHECK(check_certificate(red.cert, IdealPresentation{{amb}, o}));
  }
  SUBCASE("ab - ba reduces to zero over (a - b)") {
    CompletionState st(IdealPresentation{{amb}, o});
    NCPolynomial f = mono({0, 1}) - mono({1, 0});
    auto red = reduce(f, st);
    CHECK(red.remainder.is_zero());
    CHECK(check_certificate(red.cert, IdealPresentation{{amb}, o}));
    CHECK(expand_certificate(red.cert, {amb}) == f);
  }
  SUBCASE("yx is irreducible modulo (xy)") {
    NCPolynomial xy = mono({0, 1});
    CompletionState st(IdealPresentation{{xy}, o});
    NCPolynomial yx = mono({1, 0});
    auto red = reduce(yx, st);
    CHECK(red.remainder == yx);
    CHECK(red.cert.summands.empty());
  }
  SUBCASE("remainders are normal forms") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> coeff(-3, 3), len(0, 3), letter(0, 1);
    NCPolynomial g1 = mono({0, 0}) - mono({1});
    CompletionState st(IdealPresentation{{g1, amb}, o});
    st.step(1000);
    for (int i = 0; i < 50; ++i) {
      NCPolynomial f;
      for (int t = 0; t < 3; ++t) {
        Word w;
        int l = len(rng);
        for (int k = 0; k < l; ++k) w.push_back(static_cast<Indet>(letter(rng)));
        f.add_term(w, coeff(rng));
      }
      auto red = reduce(f, st);
      auto red2 = reduce(red.remainder, st);
      CHECK(red2.remainder == red.remainder);
      CHECK(red2.cert.summands.empty());
    }
  }
}

TEST_CASE("the displayed two-sided identity expands correctly") {
  // ab - ba = (a-b)*a - a*(a-b)
  NCPolynomial amb = mono({0}) - mono({1});
  MembershipCertificate cert;
  cert.target = mono({0, 1}) - mono({1, 0});
  cert.summands.push_back(CertSummand{1, {}, 0, {0}});
  cert.summands.push_back(CertSummand{-1, {0}, 0, {}});
  CHECK(check_certificate(cert, IdealPresentation{{amb}, MonomialOrder::deglex(2)}));
  cert.summands[0].coeff = 2;
  CHECK(!check_certificate(cert, IdealPresentation{{amb}, MonomialOrder::deglex(2)}));
}

TEST_CASE("completion: xx - x has one self-overlap that resolves") {
  MonomialOrder o = MonomialOrder::deglex(1);
  NCPolynomial g = mono({0, 0}) - mono({0});
  CompletionState st(IdealPresentation{{g}, o});
  CHECK(!st.queue_empty());
  st.step(100);
  CHECK(st.queue_empty());
  CHECK(st.complete());
  CHECK(st.basis_size() == 1);  // s-polynomial reduced to zero
}

TEST_CASE("step on the zero ideal is a no-op") {
  CompletionState st(IdealPresentation{{}, MonomialOrder::deglex(1)});
  CHECK(st.queue_empty());
  CHECK(st.step(10) == 0);
  CHECK(st.op_counter() == 0);
}

TEST_CASE("verify_membership basics") {
  MonomialOrder o = MonomialOrder::deglex(2);
  SUBCASE("zero is in the zero ideal with an empty certificate") {
    auto r = verify_membership(NCPolynomial(), IdealPresentation{{}, o}, 10);
    REQUIRE(r.verdict == MemberVerdict::Member);
    CHECK(r.certificate->summands.empty());
  }
  SUBCASE("a^2 - b^2 in (a - b)") {
    NCPolynomial amb = mono({0}) - mono({1});
    NCPolynomial f = mono({0, 0}) - mono({1, 1});
    auto r = verify_membership(f, IdealPresentation{{amb}, o}, 1000);
    REQUIRE(r.verdict == MemberVerdict::Member);
    CHECK(check_certificate(*r.certificate, IdealPresentation{{amb}, o}));
    CHECK(expand_certificate(*r.certificate, {amb}) == f);
  }
  SUBCASE("yx not in (xy), with a finite basis") {
    NCPolynomial xy = mono({0, 1});
    auto r = verify_membership(mono({1, 0}), IdealPresentation{{xy}, o}, 1000);
    REQUIRE(r.verdict == MemberVerdict::NotMember);
    REQUIRE(r.complete_basis.size() == 1);
    CHECK(r.complete_basis[0] == xy);
  }
  SUBCASE("nonzero polynomial against the zero ideal") {
    auto r = verify_membership(mono({0}), IdealPresentation{{}, o}, 10);
    CHECK(r.verdict == MemberVerdict::NotMember);
  }
}

TEST_CASE("integer coefficients need g-polynomials") {
  MonomialOrder o = MonomialOrder::deglex(1);
  SUBCASE("x in (2x, 3x) but not in (2x)") {
    NCPolynomial two = mono({0}, 2), three = mono({0}, 3), x = mono({0});
    auto r = verify_membership(x, IdealPresentation{{two, three}, o}, 1000);
    REQUIRE(r.verdict == MemberVerdict::Member);
    CHECK(check_certificate(*r.certificate, IdealPresentation{{two, three}, o}));
    auto r2 = verify_membership(x, IdealPresentation{{two}, o}, 1000);
    CHECK(r2.verdict == MemberVerdict::NotMember);
  }
  SUBCASE("2x in (6x, 10x)") {
    NCPolynomial f = mono({0}, 2);
    IdealPresentation ideal{{mono({0}, 6), mono({0}, 10)}, o};
    auto r = verify_membership(f, ideal, 1000);
    REQUIRE(r.verdict == MemberVerdict::Member);
    CHECK(check_certificate(*r.certificate, ideal));
  }
}

TEST_CASE("check_certificate rejects tampering and bad indices") {
  NCPolynomial g = mono({0, 1}) - mono({1});
  MembershipCertificate cert;
  cert.target = mono({0, 0, 1}) - mono({0, 1});
  cert.summands.push_back(CertSummand{1, {0}, 0, {}});
  IdealPresentation ideal{{g}, MonomialOrder::deglex(2)};
  CHECK(check_certificate(cert, ideal));
  SUBCASE("coefficient perturbed by one") {
    cert.summands[0].coeff += 1;
    CHECK(!check_certificate(cert, ideal));
  }
  SUBCASE("index out of range") {
    cert.summands[0].gen = 3;
    CHECK_THROWS_AS(check_certificate(cert, ideal), IndexOutOfRangeError);
  }
}

TEST_CASE("random ideals agree with the cofactor lattice oracle") {
  std::mt19937 rng(20240817);
  int decided = 0, member_count = 0, nonmember_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<uint32_t> nind(1, 3), ngen(1, 3), nterm(1, 3);
    std::uniform_int_distribution<int> coeff(-3, 3), wl(0, 2);
    uint32_t k = nind(rng);
    auto random_poly = [&](int maxlen) {
      NCPolynomial p;
      int terms = static_cast<int>(nterm(rng));
      for (int t = 0; t < terms; ++t) {
        Word w;
        int l = wl(rng) + (maxlen > 2 ? wl(rng) > 1 : 0);
        for (int i = 0; i < l && i < maxlen; ++i) {
          w.push_back(std::uniform_int_distribution<uint32_t>(0, k - 1)(rng));
        }
        int c = coeff(rng);
        if (c == 0) c = 1;
        p.add_term(w, c);
      }
      return p;
    };
    std::vector<NCPolynomial> gens;
    uint32_t g = ngen(rng);
    for (uint32_t i = 0; i < g; ++i) {
      NCPolynomial p = random_poly(2);
      if (!p.is_zero()) gens.push_back(std::move(p));
    }
    if (gens.empty()) continue;
    IdealPresentation ideal{gens, MonomialOrder::deglex(k)};
    CofactorLattice oracle(gens, k, 3);

    // candidate 1: a small combination, certainly inside the bounded span
    NCPolynomial inside;
    for (size_t i = 0; i < gens.size(); ++i) {
      Word a, b;
      int la = wl(rng) % 2, lb = wl(rng) % 2;
      for (int q = 0; q < la; ++q) a.push_back(std::uniform_int_distribution<uint32_t>(0, k - 1)(rng));
      for (int q = 0; q < lb; ++q) b.push_back(std::uniform_int_distribution<uint32_t>(0, k - 1)(rng));
      int c = coeff(rng);
      if (c == 0) c = -1;
      inside += gens[i].framed(a, b).scaled(c);
    }
    std::vector<NCPolynomial> candidates{inside, random_poly(3), random_poly(3)};

    for (const NCPolynomial& f : candidates) {
      if (f.degree() > 3) continue;
      bool oracle_says = oracle.contains(f);
      auto r = verify_membership(f, ideal, 20000);
      if (r.verdict == MemberVerdict::Unknown) continue;
      ++decided;
      if (r.verdict == MemberVerdict::Member) {
        ++member_count;
        REQUIRE(r.certificate.has_value());
        CHECK(check_certificate(*r.certificate, ideal));
        CHECK(expand_certificate(*r.certificate, gens) == f);
        CHECK(oracle_says);
      } else {
        ++nonmember_count;
        CHECK(!oracle_says);
        // NotMember is stable under a larger budget
        if (trial % 10 == 0) {
          auto r2 = verify_membership(f, ideal, 200000);
          CHECK(r2.verdict == MemberVerdict::NotMember);
        }
      }
    }
  }
  // the sample must actually exercise both outcomes
  CHECK(decided > 250);
  CHECK(member_count > 80);
  CHECK(nonmember_count > 80);
}

TEST_CASE("find_witness") {
  SUBCASE("generator already in shape") {
    // c - ab with c eliminated
    MonomialOrder o = MonomialOrder::deglex(3);
    o.elimination = {2};
    NCPolynomial gen = mono({2}) - mono({0, 1});
    auto w = find_witness(IdealPresentation{{gen}, o}, 2, 100);
    REQUIRE(w.has_value());
    CHECK(*w == mono({0, 1}));
  }
  SUBCASE("one reduction step away") {
    MonomialOrder o = MonomialOrder::deglex(3);
    o.elimination = {2};
    NCPolynomial g1 = mono({2}) - mono({0});
    NCPolynomial g2 = mono({0}) - mono({1});
    auto w = find_witness(IdealPresentation{{g1, g2}, o}, 2, 1000);
    REQUIRE(w.has_value());
    bool ok = (*w == mono({0})) || (*w == mono({1}));
    CHECK(ok);
  }
  SUBCASE("absent witness returns nothing") {
    MonomialOrder o = MonomialOrder::deglex(2);
    o.elimination = {1};
    NCPolynomial gen = mono({0, 0}) - mono({0});
    auto w = find_witness(IdealPresentation{{gen}, o}, 1, 1000);
    CHECK(!w.has_value());
  }
  SUBCASE("dummy outside the elimination block is rejected") {
    MonomialOrder o = MonomialOrder::deglex(2);
    NCPolynomial gen = mono({1}) - mono({0});
    CHECK_THROWS_AS(find_witness(IdealPresentation{{gen}, o}, 1, 10), Error);
  }
}

TEST_CASE("bounded mode never claims NotMember") {
  MonomialOrder o = MonomialOrder::deglex(2);
  // xyx - yy has a self-overlap of degree 5; a cap of 2 discards it
  NCPolynomial g = mono({0, 1, 0}) - mono({1, 1});
  CompletionState st(IdealPresentation{{g}, o}, 2);
  st.step(100000);
  CHECK(st.queue_empty());
  CHECK(!st.complete());
  MembershipQuery q(mono({1, 1, 1, 1, 1}));
  CHECK(q.poll(st) == MemberVerdict::Unknown);
}

TEST_CASE("zero generators are rejected") {
  CHECK_THROWS_AS(CompletionState(IdealPresentation{{NCPolynomial()}, MonomialOrder::deglex(1)}),
                  Error);
}
