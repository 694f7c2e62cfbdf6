#include "opstat/membership.hpp"

#include <algorithm>
#include <map>

namespace opstat {

namespace {

Coeff abs_coeff(const Coeff& c) { return c < 0 ? Coeff(-c) : c; }

Coeff gcd_coeff(Coeff a, Coeff b) {
  a = abs_coeff(a);
  b = abs_coeff(b);
  while (b != 0) {
    Coeff r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// g = s*a + t*b with g = gcd(a,b) >= 0.
Coeff xgcd(const Coeff& a, const Coeff& b, Coeff& s, Coeff& t) {
  Coeff old_r = a, r = b;
  Coeff old_s = 1, s2 = 0;
  Coeff old_t = 0, t2 = 1;
  while (r != 0) {
    Coeff q = old_r / r;
    Coeff tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s2;
    old_s = s2;
    s2 = tmp;
    tmp = old_t - q * t2;
    old_t = t2;
    t2 = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

// leftmost position where pattern occurs as a factor of w, or npos
size_t find_factor(const Word& w, const Word& pattern) {
  if (pattern.size() > w.size()) return static_cast<size_t>(-1);
  for (size_t p = 0; p + pattern.size() <= w.size(); ++p) {
    bool hit = true;
    for (size_t k = 0; k < pattern.size(); ++k) {
      if (w[p + k] != pattern[k]) {
        hit = false;
        break;
      }
    }
    if (hit) return p;
  }
  return static_cast<size_t>(-1);
}

struct WordGreater {
  const MonomialOrder* order;
  bool operator()(const Word& a, const Word& b) const { return order->compare(a, b) > 0; }
};

using WorkPoly = std::map<Word, Coeff, WordGreater>;

WorkPoly to_work(const NCPolynomial& p, const MonomialOrder& order) {
  WorkPoly w{WordGreater{&order}};
  for (const auto& [word, c] : p.terms()) w.emplace(word, c);
  return w;
}

void work_sub_scaled(WorkPoly& work, const NCPolynomial& p, const Coeff& q, const Word& a,
                     const Word& b) {
  for (const auto& [word, c] : p.terms()) {
    Word framed = concat(a, concat(word, b));
    auto it = work.find(framed);
    if (it == work.end()) {
      Coeff nc = -q * c;
      if (nc != 0) work.emplace(std::move(framed), std::move(nc));
    } else {
      it->second -= q * c;
      if (it->second == 0) work.erase(it);
    }
  }
}

void append_scaled_cert(std::vector<CertSummand>& out, const MembershipCertificate& cert,
                        const Coeff& q, const Word& a, const Word& b) {
  for (const CertSummand& s : cert.summands) {
    out.push_back(CertSummand{q * s.coeff, concat(a, s.left), s.gen, concat(s.right, b)});
  }
}

}  // namespace

int MonomialOrder::compare(const Word& a, const Word& b) const {
  if (!elimination.empty()) {
    auto count = [&](const Word& w) {
      size_t n = 0;
      for (Indet x : w) {
        for (Indet e : elimination) {
          if (x == e) {
            ++n;
            break;
          }
        }
      }
      return n;
    };
    size_t ca = count(a), cb = count(b);
    if (ca != cb) return ca < cb ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  auto rank = [&](Indet x) -> size_t {
    for (size_t i = 0; i < elimination.size(); ++i) {
      if (elimination[i] == x) return i;
    }
    for (size_t i = 0; i < precedence.size(); ++i) {
      if (precedence[i] == x) return elimination.size() + i;
    }
    return elimination.size() + precedence.size() + x;
  };
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    size_t ra = rank(a[i]), rb = rank(b[i]);
    // smaller rank = larger letter = larger word
    return ra < rb ? 1 : -1;
  }
  return 0;
}

bool MonomialOrder::has_eliminated(const Word& w) const {
  for (Indet x : w) {
    for (Indet e : elimination) {
      if (x == e) return true;
    }
  }
  return false;
}

MonomialOrder MonomialOrder::deglex(size_t indet_count) {
  MonomialOrder o;
  o.precedence.resize(indet_count);
  for (size_t i = 0; i < indet_count; ++i) o.precedence[i] = static_cast<Indet>(i);
  return o;
}

void MembershipCertificate::normalize() {
  std::map<std::tuple<Word, uint32_t, Word>, Coeff> merged;
  for (const CertSummand& s : summands) {
    merged[std::make_tuple(s.left, s.gen, s.right)] += s.coeff;
  }
  summands.clear();
  for (auto& [key, c] : merged) {
    if (c == 0) continue;
    summands.push_back(CertSummand{c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  }
}

NCPolynomial expand_certificate(const MembershipCertificate& cert,
                                const std::vector<NCPolynomial>& generators) {
  NCPolynomial sum;
  for (const CertSummand& s : cert.summands) {
    if (s.gen >= generators.size()) {
      throw IndexOutOfRangeError("certificate references generator " + std::to_string(s.gen) +
                                 " of " + std::to_string(generators.size()));
    }
    sum += generators[s.gen].framed(s.left, s.right).scaled(s.coeff);
  }
  return sum;
}

bool check_certificate(const MembershipCertificate& cert, const IdealPresentation& ideal) {
  return expand_certificate(cert, ideal.generators) == cert.target;
}

CompletionState::CompletionState(IdealPresentation p, std::optional<uint32_t> degree_cap)
    : order_(std::move(p.order)), original_(std::move(p.generators)), degree_cap_(degree_cap) {
  for (size_t i = 0; i < original_.size(); ++i) {
    if (original_[i].is_zero()) throw Error("ideal presentation contains a zero generator");
    MembershipCertificate cert;
    cert.target = original_[i];
    cert.summands.push_back(CertSummand{1, {}, static_cast<uint32_t>(i), {}});
    adjoin(original_[i], std::move(cert));
  }
}

void CompletionState::push_ambiguity(uint32_t i, uint32_t j, Word li, Word ri, Word lj, Word rj,
                                     uint32_t deg) {
  const Coeff& ci = basis_[i].ordered.front().second;
  const Coeff& cj = basis_[j].ordered.front().second;
  Ambiguity s{deg, seq_++, i, j, li, ri, lj, rj, false};
  queue_.insert(s);
  Coeff d = gcd_coeff(ci, cj);
  if (d != abs_coeff(ci) && d != abs_coeff(cj)) {
    Ambiguity g{deg, seq_++, i, j, std::move(li), std::move(ri), std::move(lj), std::move(rj), true};
    queue_.insert(g);
  }
}

void CompletionState::enqueue_pairs(uint32_t n) {
  const Word& wn = basis_[n].ordered.front().first;
  for (uint32_t k = 0; k <= n; ++k) {
    const Word& wk = basis_[k].ordered.front().first;
    if (k == n) {
      // proper self-overlaps
      for (size_t len = 1; len < wn.size(); ++len) {
        bool match = true;
        for (size_t t = 0; t < len; ++t) {
          if (wn[wn.size() - len + t] != wn[t]) {
            match = false;
            break;
          }
        }
        if (!match) continue;
        Word rest(wn.begin() + static_cast<long>(len), wn.end());
        Word head(wn.begin(), wn.end() - static_cast<long>(len));
        // W = wn . rest = head . wn
        push_ambiguity(n, n, {}, rest, head, {}, static_cast<uint32_t>(wn.size() + rest.size()));
      }
      continue;
    }
    // equal leading words
    if (wk == wn) {
      push_ambiguity(k, n, {}, {}, {}, {}, static_cast<uint32_t>(wk.size()));
      continue;
    }
    // inclusion: shorter inside longer
    const bool k_shorter = wk.size() < wn.size();
    const Word& small = k_shorter ? wk : wn;
    const Word& big = k_shorter ? wn : wk;
    for (size_t p = 0; p + small.size() <= big.size(); ++p) {
      bool hit = true;
      for (size_t t = 0; t < small.size(); ++t) {
        if (big[p + t] != small[t]) {
          hit = false;
          break;
        }
      }
      if (!hit) continue;
      Word a(big.begin(), big.begin() + static_cast<long>(p));
      Word b(big.begin() + static_cast<long>(p + small.size()), big.end());
      if (k_shorter) {
        push_ambiguity(k, n, a, b, {}, {}, static_cast<uint32_t>(big.size()));
      } else {
        push_ambiguity(k, n, {}, {}, a, b, static_cast<uint32_t>(big.size()));
      }
    }
    // proper overlaps, both directions
    for (size_t len = 1; len < std::min(wk.size(), wn.size()); ++len) {
      // suffix of wk = prefix of wn: W = wk . wn[len:]
      bool match = true;
      for (size_t t = 0; t < len; ++t) {
        if (wk[wk.size() - len + t] != wn[t]) {
          match = false;
          break;
        }
      }
      if (match) {
        Word rest(wn.begin() + static_cast<long>(len), wn.end());
        Word head(wk.begin(), wk.end() - static_cast<long>(len));
        push_ambiguity(k, n, {}, rest, head, {},
                       static_cast<uint32_t>(wk.size() + rest.size()));
      }
      // suffix of wn = prefix of wk: W = wn . wk[len:]
      match = true;
      for (size_t t = 0; t < len; ++t) {
        if (wn[wn.size() - len + t] != wk[t]) {
          match = false;
          break;
        }
      }
      if (match) {
        Word rest(wk.begin() + static_cast<long>(len), wk.end());
        Word head(wn.begin(), wn.end() - static_cast<long>(len));
        push_ambiguity(k, n, head, {}, {}, rest,
                       static_cast<uint32_t>(wn.size() + rest.size()));
      }
    }
  }
}

void CompletionState::adjoin(NCPolynomial p, MembershipCertificate cert) {
  BasisElement be;
  be.ordered.assign(p.terms().begin(), p.terms().end());
  std::sort(be.ordered.begin(), be.ordered.end(),
            [&](const auto& a, const auto& b) { return order_.compare(a.first, b.first) > 0; });
  if (be.ordered.front().second < 0) {
    p = -p;
    for (auto& [w, c] : be.ordered) c = -c;
    for (CertSummand& s : cert.summands) s.coeff = -s.coeff;
    cert.target = p;
  }
  cert.normalize();
  be.poly = std::move(p);
  be.cert = std::move(cert);
  basis_.push_back(std::move(be));
  enqueue_pairs(static_cast<uint32_t>(basis_.size() - 1));
}

uint64_t CompletionState::step(uint64_t budget) {
  uint64_t used = 0;
  while (used < budget && !queue_.empty()) {
    Ambiguity amb = *queue_.begin();
    queue_.erase(queue_.begin());
    ++ops_;
    ++used;
    if (degree_cap_ && amb.deg > *degree_cap_) {
      discarded_ = true;
      continue;
    }
    const BasisElement& gi = basis_[amb.i];
    const BasisElement& gj = basis_[amb.j];
    const Coeff& ci = gi.ordered.front().second;
    const Coeff& cj = gj.ordered.front().second;

    NCPolynomial h;
    MembershipCertificate hcert;
    if (amb.gpoly) {
      Coeff s, t;
      xgcd(ci, cj, s, t);
      h = gi.poly.framed(amb.left_i, amb.right_i).scaled(s) +
          gj.poly.framed(amb.left_j, amb.right_j).scaled(t);
      append_scaled_cert(hcert.summands, gi.cert, s, amb.left_i, amb.right_i);
      append_scaled_cert(hcert.summands, gj.cert, t, amb.left_j, amb.right_j);
    } else {
      Coeff d = gcd_coeff(ci, cj);
      Coeff l = ci / d * cj;  // signed lcm
      Coeff mi = l / ci, mj = l / cj;
      h = gi.poly.framed(amb.left_i, amb.right_i).scaled(mi) -
          gj.poly.framed(amb.left_j, amb.right_j).scaled(mj);
      append_scaled_cert(hcert.summands, gi.cert, mi, amb.left_i, amb.right_i);
      append_scaled_cert(hcert.summands, gj.cert, -mj, amb.left_j, amb.right_j);
    }
    if (h.is_zero()) continue;
    ReduceOutcome red = reduce(h, *this);
    if (red.remainder.is_zero()) continue;
    // h = remainder + expand(red.cert): remainder's certificate subtracts the
    // reduction steps from h's construction.
    for (CertSummand& s : red.cert.summands) s.coeff = -s.coeff;
    hcert.summands.insert(hcert.summands.end(), red.cert.summands.begin(), red.cert.summands.end());
    hcert.target = red.remainder;
    ++ops_;
    ++used;
    adjoin(std::move(red.remainder), std::move(hcert));
  }
  return used;
}

ReduceOutcome reduce(const NCPolynomial& f, const CompletionState& state) {
  WorkPoly work = to_work(f, state.order());
  NCPolynomial stuck;
  ReduceOutcome out;
  while (!work.empty()) {
    auto lead = work.begin();
    const Word& w = lead->first;
    const Coeff& c = lead->second;
    bool reduced = false;
    for (size_t idx = 0; idx < state.basis_size(); ++idx) {
      const BasisElement& g = state.basis(idx);
      const Word& gw = g.ordered.front().first;
      const Coeff& gc = g.ordered.front().second;
      if (c % gc != 0) continue;
      size_t pos = find_factor(w, gw);
      if (pos == static_cast<size_t>(-1)) continue;
      Coeff q = c / gc;
      Word a(w.begin(), w.begin() + static_cast<long>(pos));
      Word b(w.begin() + static_cast<long>(pos + gw.size()), w.end());
      append_scaled_cert(out.cert.summands, g.cert, q, a, b);
      work_sub_scaled(work, g.poly, q, a, b);
      reduced = true;
      break;
    }
    if (!reduced) {
      stuck.add_term(w, c);
      work.erase(work.begin());
    }
  }
  out.cert.target = f - stuck;
  out.cert.normalize();
  out.remainder = std::move(stuck);
  return out;
}

MembershipQuery::MembershipQuery(NCPolynomial target) : target_(std::move(target)) {}

MemberVerdict MembershipQuery::poll(const CompletionState& state) {
  if (!started_) {
    started_ = true;
    ReduceOutcome red = reduce(target_, state);
    remainder_ = std::move(red.remainder);
    summands_ = std::move(red.cert.summands);
    basis_seen_ = state.basis_size();
  } else if (basis_seen_ < state.basis_size() && !remainder_.is_zero()) {
    // Only newly adjoined elements can unlock a stuck monomial.
    bool maybe = false;
    for (size_t idx = basis_seen_; idx < state.basis_size() && !maybe; ++idx) {
      const auto& lead = state.basis(idx).ordered.front();
      for (const auto& [w, c] : remainder_.terms()) {
        if (c % lead.second == 0 && find_factor(w, lead.first) != static_cast<size_t>(-1)) {
          maybe = true;
          break;
        }
      }
    }
    basis_seen_ = state.basis_size();
    if (maybe) {
      ReduceOutcome red = reduce(remainder_, state);
      remainder_ = std::move(red.remainder);
      summands_.insert(summands_.end(), red.cert.summands.begin(), red.cert.summands.end());
    }
  }
  if (remainder_.is_zero()) return MemberVerdict::Member;
  if (state.complete()) return MemberVerdict::NotMember;
  return MemberVerdict::Unknown;
}

MembershipCertificate MembershipQuery::certificate() const {
  MembershipCertificate cert;
  cert.target = target_;
  cert.summands = summands_;
  cert.normalize();
  return cert;
}

MembershipResult verify_membership(const NCPolynomial& f, const IdealPresentation& ideal,
                                   uint64_t budget) {
  if (budget < 1) throw Error("verify_membership requires budget >= 1");
  CompletionState state(ideal);
  MembershipQuery query(f);
  uint64_t used = 0;
  for (;;) {
    MemberVerdict v = query.poll(state);
    if (v == MemberVerdict::Member) {
      MembershipResult r;
      r.verdict = v;
      r.certificate = query.certificate();
      return r;
    }
    if (v == MemberVerdict::NotMember) {
      MembershipResult r;
      r.verdict = v;
      for (size_t i = 0; i < state.basis_size(); ++i) r.complete_basis.push_back(state.basis(i).poly);
      return r;
    }
    if (used >= budget || (state.queue_empty() && !state.complete())) {
      return MembershipResult{};  // Unknown
    }
    used += state.step(std::min<uint64_t>(budget - used, 64));
  }
}

std::optional<NCPolynomial> find_witness(const IdealPresentation& ideal, Indet dummy,
                                         uint64_t budget) {
  bool in_block = false;
  for (Indet e : ideal.order.elimination) in_block |= (e == dummy);
  if (!in_block) throw Error("find_witness requires the dummy in the elimination block");

  CompletionState state(ideal);
  size_t scanned = 0;
  uint64_t used = 0;
  auto scan = [&]() -> std::optional<NCPolynomial> {
    for (; scanned < state.basis_size(); ++scanned) {
      const NCPolynomial& p = state.basis(scanned).poly;
      if (p.term_count() != 2) continue;
      auto it = p.terms().begin();
      auto [w1, c1] = *it;
      ++it;
      auto [w2, c2] = *it;
      const Word dummy_word{dummy};
      for (int swap = 0; swap < 2; ++swap) {
        const Word& cw = swap ? w2 : w1;
        const Coeff& cc = swap ? c2 : c1;
        const Word& ww = swap ? w1 : w2;
        const Coeff& wc = swap ? c1 : c2;
        if (cw == dummy_word && abs_coeff(cc) == 1 && wc == -cc &&
            !ideal.order.has_eliminated(ww)) {
          return NCPolynomial::monomial(ww);
        }
      }
    }
    return std::nullopt;
  };
  for (;;) {
    if (auto w = scan()) return w;
    if (state.queue_empty() || used >= budget) return std::nullopt;
    used += state.step(std::min<uint64_t>(budget - used, 64));
  }
}

}  // namespace opstat
