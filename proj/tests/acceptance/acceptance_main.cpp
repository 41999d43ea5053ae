// Acceptance suite: one checked criterion per run (or all), one line each.
// Exit code 0 iff every executed criterion passed.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "conjforge/harness.hpp"
#include "conjforge/matrix_oracle.hpp"

namespace {

using namespace conjforge;
using liealg::ChevalleyBasis;
using rootsys::ReductionOrder;
using rootsys::RootSystem;
using rootsys::RootSystemKind;
using unipotent::UnipotentCoords;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  long uniform(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rat rational(long bound, bool allow_zero = false) {
    if (allow_zero && uniform(0, 3) == 0) return Rat(0);
    Rat r(uniform(1, bound), uniform(1, bound));
    r.canonicalize();
    if (next() & 1) r = -r;
    return r;
  }
};

struct Ctx {
  RootSystem rs;
  ChevalleyBasis cb;
  ReductionOrder order;
  explicit Ctx(const char* k)
      : rs(RootSystem::build(RootSystemKind::parse(k))),
        cb(ChevalleyBasis::build(rs)),
        order(rootsys::builtin_order(rs)) {}
};

const char* kEndToEndKinds[] = {"A3", "B3", "C3", "D4", "G2", "F4"};

harness::ExperimentConfig end_to_end_config(const RootSystemKind& kind) {
  harness::ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.trials = 1000;
  cfg.seed = 20240842;
  cfg.coeff_bound = 4;
  cfg.delta_min = Rat(1, 2);
  cfg.scramble_len = 5;
  return cfg;
}

// 1. Ordering certification across the kind matrix, builtin and search.
Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  std::vector<std::string> kinds = {"A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5",
                                    "C3", "C4", "C5", "D4", "D5", "F4", "G2",
                                    "E6", "E7", "E8"};
  int bad = 0;
  for (const auto& k : kinds) {
    auto rs = RootSystem::build(RootSystemKind::parse(k));
    if (!rootsys::verify_order(rs, rootsys::builtin_order(rs)).empty()) bad++;
    if (!rootsys::verify_order(rs, rootsys::search_order(rs)).empty()) bad++;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.pass = bad == 0 && secs < 60.0;
  std::ostringstream os;
  os << kinds.size() << " kinds, builtin+search, " << bad << " invalid orders, "
     << secs << " s";
  out.detail = os.str();
  return out;
}

// 2. The 4x4 walkthrough: elementary conjugation identity and the four
// diagonal fourth-power formulas.
Outcome criterion2() {
  Outcome out;
  Rng rng(2);
  int fails = 0;
  for (int t = 0; t < 500; ++t) {
    Rat x1 = rng.rational(6), x2 = rng.rational(6), x3 = rng.rational(6);
    if (x1 == 0) x1 = 1;
    if (x2 == 0) x2 = 1;
    if (x3 == 0) x3 = 1;
    Rat y1 = rng.rational(6, true), y2 = rng.rational(6, true), z1 = rng.rational(6, true);
    oracle::RationalMatrix u = oracle::RationalMatrix::identity(4);
    u.a[0][1] = x1;
    u.a[1][2] = x2;
    u.a[2][3] = x3;
    u.a[0][2] = y1;
    u.a[1][3] = y2;
    u.a[0][3] = z1;
    Rat alpha = -y1 / x2;
    oracle::RationalMatrix c = oracle::RationalMatrix::identity(4);
    c.a[0][1] = alpha;
    auto v = oracle::oracle_conjugate(u, c);
    if (!(v.a[0][2] == 0 && v.a[0][3] == z1 + alpha * y2 && v.a[0][1] == x1 &&
          v.a[1][2] == x2 && v.a[2][3] == x3 && v.a[1][3] == y2))
      fails++;

    // diagonal formulas: exact fourth powers, unit product, 1e-9 numerics
    std::array<Rat, 3> xs{x1, x2, x3};
    std::array<Rat, 3> ws;
    for (int i = 0; i < 3; ++i) {
      ws[i] = rng.rational(6);
      if (ws[i] == 0) ws[i] = 1;
      if (ws[i] / xs[i] <= 0) ws[i] = -ws[i];
    }
    auto d = oracle::sl4_diagonal(xs, ws);
    if (!d.conjugate) {
      fails++;
      continue;
    }
    Rat a14 = (ws[0] * ws[0] * ws[0] * ws[1] * ws[1] * ws[2]) /
              (xs[0] * xs[0] * xs[0] * xs[1] * xs[1] * xs[2]);
    Rat a44 = (xs[0] * xs[1] * xs[1] * xs[2] * xs[2] * xs[2]) /
              (ws[0] * ws[1] * ws[1] * ws[2] * ws[2] * ws[2]);
    if (!(d.alpha_pow4[0] == a14 && d.alpha_pow4[3] == a44)) fails++;
    if (d.alpha_pow4[0] * d.alpha_pow4[1] * d.alpha_pow4[2] * d.alpha_pow4[3] != Rat(1))
      fails++;
    for (int i = 0; i < 3; ++i) {
      double got = d.alpha[i] / d.alpha[i + 1] * rat_double(xs[i]);
      if (std::fabs(got - rat_double(ws[i])) > 1e-9 * std::max(1.0, std::fabs(got)))
        fails++;
    }
  }
  out.pass = fails == 0;
  out.detail = "500 instances, " + std::to_string(fails) + " failures";
  return out;
}

// 3. Conjugation-formula footprints, exact, >= 1000 cases per kind (rank <= 4).
Outcome criterion3() {
  Outcome out;
  int fails = 0;
  long cases = 0;
  for (const char* k : {"A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"}) {
    Ctx c(k);
    Rng rng(3);
    for (int t = 0; t < 1000; ++t) {
      UnipotentCoords u;
      for (int i = 0; i < c.rs.size(); ++i) {
        Rat v = rng.rational(4, true);
        if (v != 0) u.coords[i] = v;
      }
      // Lemma 7.1 footprint
      int mu = static_cast<int>(rng.uniform(0, c.rs.size() - 1));
      Rat z = rng.rational(4);
      auto v1 = unipotent::conj_root_exp(c.cb, u, mu, z);
      std::set<int> admissible;
      for (const auto& [lam, coeff] : u.coords) {
        rootsys::Root cur = c.rs.root(lam);
        for (int r = 1;; ++r) {
          for (int i = 0; i < c.rs.rank(); ++i) cur[i] += c.rs.root(mu)[i];
          auto idx = c.rs.index_of(cur);
          if (!idx) break;
          admissible.insert(*idx);
        }
      }
      for (int j = 0; j < c.rs.size(); ++j)
        if (!(v1.at(j) == u.at(j)) && !admissible.count(j)) fails++;
      // Lemma 7.3 height invariance
      int m1 = static_cast<int>(rng.uniform(0, c.rs.size() - 1));
      int m2 = static_cast<int>(rng.uniform(0, c.rs.size() - 1));
      auto v2 = unipotent::conj_commutator(c.cb, u, m1, rng.rational(4), m2, rng.rational(4));
      int cutoff = c.rs.height_of(m1) + c.rs.height_of(m2);
      for (int j = 0; j < c.rs.size(); ++j)
        if (c.rs.height_of(j) <= cutoff && !(v2.at(j) == u.at(j))) fails++;
      cases += 2;
    }
  }
  out.pass = fails == 0;
  out.detail = std::to_string(cases) + " cases, " + std::to_string(fails) + " violations";
  return out;
}

// 4. Prop 6.2 sandwich, exact, plus the pinned c0_sq(A2) = 1/6.
Outcome criterion4() {
  Outcome out;
  int fails = 0;
  {
    Ctx a2("A2");
    if (!(a2.cb.c_constants().c0_sq == Rat(1, 6))) fails++;
  }
  for (const char* k : {"A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"}) {
    Ctx c(k);
    auto cc = c.cb.c_constants();
    Rng rng(4);
    std::vector<std::pair<int, int>> pairs;
    for (int s = 0; s < c.rs.rank(); ++s)
      for (int mu = 0; mu < c.rs.size(); ++mu)
        if (c.rs.sum(c.rs.simple_index(s), mu)) pairs.push_back({c.rs.simple_index(s), mu});
    for (int t = 0; t < 1000; ++t) {
      auto [lam, mu] = pairs[rng.uniform(0, static_cast<long>(pairs.size()) - 1)];
      Rat a = rng.rational(9), b = rng.rational(9);
      if (a == 0) a = 1;
      if (b == 0) b = 1;
      auto ylam = c.cb.e_pos(lam, a);
      auto ymu = c.cb.e_pos(mu, b);
      Rat lhs = c.cb.norm_sq(c.cb.bracket(ymu, ylam));
      Rat scale = c.cb.norm_sq(ylam) * c.cb.norm_sq(ymu);
      if (!(cc.c0_sq * scale <= lhs && lhs <= cc.c1_sq * scale)) fails++;
    }
  }
  out.pass = fails == 0;
  out.detail = "11 kinds x 1000 pairs, " + std::to_string(fails) + " violations";
  return out;
}

// 5. Lemma 8.1 / Prop 8.3 ledger on every generated instance of the
// end-to-end matrix: per-step factor_len_sq * c0_sq * delta^2 <= |Y|^2
// exactly, and sum of g1-factor lengths <= K(delta) * length(u) within 1e-9.
Outcome criterion5() {
  Outcome out;
  long steps = 0, single_fails = 0, pair_fails = 0;
  int ledger_fails = 0, instances = 0;
  for (const char* k : kEndToEndKinds) {
    Ctx c(k);
    auto cfg = end_to_end_config(c.rs.kind());
    for (int t = 0; t < cfg.trials; ++t) {
      auto inst = harness::gen_instance(c.cb, cfg, t);
      auto res = reduce::conjugate(c.cb, c.order, inst.u, inst.v);
      instances++;
      for (const auto* side : {&res.steps_u, &res.steps_v})
        for (const auto& st : *side) {
          steps++;
          if (!st.bound_holds) {
            if (std::holds_alternative<rootsys::WitnessPair>(st.witness))
              pair_fails++;
            else
              single_fails++;
          }
        }
      double sum_u = 0, sum_v = 0;
      for (const auto& st : res.steps_u) sum_u += std::sqrt(rat_double(st.factor_len_sq));
      for (const auto& st : res.steps_v) sum_v += std::sqrt(rat_double(st.factor_len_sq));
      double lu = unipotent::length(c.cb, inst.u);
      double lv = unipotent::length(c.cb, inst.v);
      if (sum_u > res.k_delta * lu + 1e-9) ledger_fails++;
      if (sum_v > res.k_delta * lv + 1e-9) ledger_fails++;
    }
  }
  out.pass = single_fails == 0 && pair_fails == 0 && ledger_fails == 0;
  std::ostringstream os;
  os << instances << " instances, " << steps << " steps; per-step bound violations: "
     << single_fails << " single-route, " << pair_fails
     << " pair-layer; K(delta) ledger violations: " << ledger_fails;
  out.detail = os.str();
  return out;
}

// 6. End-to-end: 1000 generated-conjugate pairs per kind, verified = true
// with exact equality and length_upper <= assembled bound; suite < 5 min.
Outcome criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  int unverified = 0, bound_fails = 0, instances = 0;
  for (const char* k : kEndToEndKinds) {
    Ctx c(k);
    auto cfg = end_to_end_config(c.rs.kind());
    for (int t = 0; t < cfg.trials; ++t) {
      auto inst = harness::gen_instance(c.cb, cfg, t);
      auto res = reduce::conjugate(c.cb, c.order, inst.u, inst.v);
      instances++;
      bool exact = res.status == reduce::Status::Conjugate && res.verified &&
                   unipotent::conj_word(c.cb, inst.u, res.word) == inst.v;
      if (!exact) unverified++;
      if (res.length_upper > res.linear_bound) bound_fails++;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.pass = unverified == 0 && bound_fails == 0 && secs < 300.0;
  std::ostringstream os;
  os << instances << " instances; unverified: " << unverified
     << "; bound violations: " << bound_fails << "; " << secs << " s";
  out.detail = os.str();
  return out;
}

// 7. Type-A oracle equivalence: embed / conjugate / reduce commute, exactly.
Outcome criterion7() {
  Outcome out;
  int fails = 0, instances = 0;
  for (const char* k : {"A2", "A3", "A4", "A5"}) {
    Ctx c(k);
    Rng rng(7);
    for (int t = 0; t < 250; ++t) {
      instances++;
      UnipotentCoords u;
      for (int i = 0; i < c.rs.size(); ++i) {
        bool simple = c.rs.is_simple(i);
        Rat v = rng.rational(4, !simple);
        if (simple && v == 0) v = 1;
        if (v != 0) u.coords[i] = v;
      }
      // embed o (abstract conjugation) = (matrix conjugation) o embed
      auto z = c.cb.e_pos(static_cast<int>(rng.uniform(0, c.rs.size() - 1)),
                          rng.rational(4));
      auto lhs = oracle::embed_typeA(c.cb, unipotent::conj_nil(c.cb, u, z));
      auto g = oracle::embed_typeA(c.cb, UnipotentCoords::from_log(c.cb, z));
      auto rhs = oracle::oracle_conjugate(oracle::embed_typeA(c.cb, u), g);
      if (!(lhs == rhs)) fails++;
      // oracle_reduce's reduced matrix equals embed of reduce_to_simple's u'
      auto ab = reduce::reduce_to_simple(c.cb, c.order, u);
      auto mat = oracle::oracle_reduce(oracle::embed_typeA(c.cb, u));
      if (!mat.simple_case || !(oracle::embed_typeA(c.cb, ab.reduced) == mat.reduced))
        fails++;
    }
  }
  out.pass = fails == 0;
  out.detail = std::to_string(instances) + " instances, " + std::to_string(fails) +
               " disagreements";
  return out;
}

// 8. Negative paths: sign obstruction and vanishing simple entries.
Outcome criterion8() {
  Outcome out;
  int fails = 0;
  for (const char* k : {"A3", "B3", "D4"}) {
    Ctx c(k);
    Rng rng(8);
    UnipotentCoords u;
    for (int i = 0; i < c.rs.size(); ++i) {
      bool simple = c.rs.is_simple(i);
      Rat v = rng.rational(4, !simple);
      if (simple && v == 0) v = 1;
      if (v != 0) u.coords[i] = v;
    }
    UnipotentCoords flipped = u;
    int s0 = c.rs.simple_index(0);
    flipped.coords[s0] = -u.at(s0);
    auto r1 = reduce::conjugate(c.cb, c.order, u, flipped);
    if (!(r1.status == reduce::Status::NotConjugate && r1.reason == "negative-ratio"))
      fails++;
    UnipotentCoords missing = u;
    missing.coords.erase(s0);
    auto r2 = reduce::conjugate(c.cb, c.order, u, missing);
    if (r2.status != reduce::Status::NotSimpleCase) fails++;
    auto r3 = reduce::conjugate(c.cb, c.order, missing, u);
    if (r3.status != reduce::Status::NotSimpleCase) fails++;
  }
  out.pass = fails == 0;
  out.detail = "directed sign/zero probes, " + std::to_string(fails) + " failures";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 <= argc - 1; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);

  std::function<Outcome()> checks[] = {criterion1, criterion2, criterion3, criterion4,
                                       criterion5, criterion6, criterion7, criterion8};
  const char* names[] = {
      "ordering certification (builtin + search, zero violations)",
      "4x4 elementary conjugation and diagonal fourth-power formulas",
      "conjugation-formula footprints, exact",
      "c0/c1 sandwich, exact, with c0_sq(A2) = 1/6",
      "per-step factor bound and K(delta) ledger",
      "end-to-end conjugation, exact verification and assembled bound",
      "type-A matrix oracle equivalence, exact",
      "negative paths: negative-ratio and not-simple-case",
  };

  bool all_pass = true;
  for (int i = 1; i <= 8; ++i) {
    if (only != 0 && only != i) continue;
    Outcome o = checks[i - 1]();
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << i << ": " << names[i - 1]
              << " -- " << o.detail << "\n";
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
