#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conjforge/matrix_oracle.hpp"
#include "test_util.hpp"

using namespace conjforge;
using namespace conjforge::oracle;
using conjforge::liealg::ChevalleyBasis;
using conjforge::rootsys::RootSystem;
using conjforge::rootsys::RootSystemKind;
using conjforge::unipotent::UnipotentCoords;

namespace {

ChevalleyBasis basis(const std::string& k) {
  return ChevalleyBasis::build(RootSystem::build(RootSystemKind::parse(k)));
}

RationalMatrix strict_upper(int n, testutil::Rng& rng, long bound = 5) {
  RationalMatrix x = RationalMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) x.a[i][j] = rng.rational(bound, true);
  return x;
}

}  // namespace

TEST_CASE("embed: zero coords give the identity") {
  auto cb = basis("A3");
  CHECK(embed_typeA(cb, UnipotentCoords{}) == RationalMatrix::identity(4));
}

TEST_CASE("embed A2 example: rows [[1,1,3/2],[0,1,1],[0,0,1]]") {
  auto cb = basis("A2");
  const auto& rs = cb.roots();
  UnipotentCoords u;
  for (int k = 0; k < rs.size(); ++k) u.coords[k] = Rat(1);
  auto m = embed_typeA(cb, u);
  CHECK(m.a[0][1] == Rat(1));
  CHECK(m.a[0][2] == Rat(3, 2));
  CHECK(m.a[1][2] == Rat(1));
  CHECK(m.a[1][0] == Rat(0));
  // log(embed(u)) returns u exactly
  CHECK(extract_typeA(cb, m) == u);
}

TEST_CASE("embed rejects non-A kinds") {
  auto cb = basis("B2");
  CHECK_THROWS_AS(embed_typeA(cb, UnipotentCoords{}), std::invalid_argument);
}

TEST_CASE("exp/log round-trip on 1000 random strictly-upper matrices, n <= 6") {
  testutil::Rng rng(101);
  for (int t = 0; t < 1000; ++t) {
    int n = static_cast<int>(rng.uniform(2, 6));
    auto x = strict_upper(n, rng);
    auto m = nilpotent_exp(x);
    CHECK(m.unipotent_upper());
    CHECK(nilpotent_log(m) == x);
  }
}

TEST_CASE("the elementary conjugation identity from the 4x4 walkthrough") {
  // (I + a E12) u (I - a E12): y1 -> y1 + a x2, z1 -> z1 + a y2, rest fixed.
  testutil::Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    Rat x1 = rng.rational(5), x2 = rng.rational(5), x3 = rng.rational(5);
    if (x1 == 0) x1 = 1;
    if (x2 == 0) x2 = 1;
    if (x3 == 0) x3 = 1;
    Rat y1 = rng.rational(5, true), y2 = rng.rational(5, true), z1 = rng.rational(5, true);
    RationalMatrix u = RationalMatrix::identity(4);
    u.a[0][1] = x1;
    u.a[1][2] = x2;
    u.a[2][3] = x3;
    u.a[0][2] = y1;
    u.a[1][3] = y2;
    u.a[0][3] = z1;
    Rat alpha = -y1 / x2;
    RationalMatrix c = RationalMatrix::identity(4);
    c.a[0][1] = alpha;
    auto v = oracle_conjugate(u, c);
    CHECK(v.a[0][2] == y1 + alpha * x2);
    CHECK(v.a[0][2] == Rat(0));
    CHECK(v.a[0][3] == z1 + alpha * y2);
    CHECK(v.a[0][1] == x1);
    CHECK(v.a[1][2] == x2);
    CHECK(v.a[2][3] == x3);
    CHECK(v.a[1][3] == y2);
  }
}

TEST_CASE("oracle_reduce on the 3x3 example") {
  RationalMatrix m = RationalMatrix::identity(3);
  m.a[0][1] = Rat(1);
  m.a[1][2] = Rat(1);
  m.a[0][2] = Rat(3, 2);
  auto r = oracle_reduce(m);
  REQUIRE(r.simple_case);
  // conjugator I - E12, reduced [[1,1,1/2],[0,1,1],[0,0,1]]
  RationalMatrix expect_c = RationalMatrix::identity(3);
  expect_c.a[0][1] = Rat(-1);
  CHECK(r.conjugator == expect_c);
  CHECK(r.reduced.a[0][2] == Rat(1, 2));
  CHECK(r.reduced.a[0][1] == Rat(1));
  CHECK(r.reduced.a[1][2] == Rat(1));
  CHECK(oracle_conjugate(m, r.conjugator) == r.reduced);
}

TEST_CASE("oracle_reduce clears all log coordinates above the superdiagonal") {
  testutil::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    int n = static_cast<int>(rng.uniform(3, 6));
    auto x = strict_upper(n, rng, 4);
    for (int i = 0; i + 1 < n; ++i)
      if (x.a[i][i + 1] == 0) x.a[i][i + 1] = 1;
    auto m = nilpotent_exp(x);
    auto r = oracle_reduce(m);
    REQUIRE(r.simple_case);
    CHECK(oracle_conjugate(m, r.conjugator) == r.reduced);
    auto logr = nilpotent_log(r.reduced);
    for (int i = 0; i < n; ++i)
      for (int j = i + 2; j < n; ++j) CHECK(logr.a[i][j] == Rat(0));
    // super-diagonal untouched
    for (int i = 0; i + 1 < n; ++i) CHECK(logr.a[i][i + 1] == x.a[i][i + 1]);
  }
}

TEST_CASE("already-reduced input gives the identity conjugator") {
  auto cb = basis("A3");
  const auto& rs = cb.roots();
  UnipotentCoords u;
  for (int i = 0; i < rs.rank(); ++i) u.coords[rs.simple_index(i)] = Rat(i + 2, 3);
  auto m = embed_typeA(cb, u);
  auto r = oracle_reduce(m);
  REQUIRE(r.simple_case);
  CHECK(r.conjugator == RationalMatrix::identity(4));
  CHECK(r.reduced == m);
}

TEST_CASE("zero super-diagonal entry reports the non-simple case") {
  RationalMatrix m = RationalMatrix::identity(3);
  m.a[0][2] = Rat(1);
  auto r = oracle_reduce(m);
  CHECK_FALSE(r.simple_case);
}

TEST_CASE("sl4_diagonal: identity, the 16-ratio example, and the product relation") {
  auto one = Rat(1);
  auto id = sl4_diagonal({one, one, one}, {one, one, one});
  REQUIRE(id.conjugate);
  for (int i = 0; i < 4; ++i) CHECK(id.alpha_pow4[i] == Rat(1));

  auto r = sl4_diagonal({one, one, one}, {Rat(16), one, one});
  REQUIRE(r.conjugate);
  CHECK(r.alpha_pow4[0] == Rat(4096));
  CHECK(r.alpha_pow4[1] == Rat(1, 16));
  CHECK(r.alpha_pow4[2] == Rat(1, 16));
  CHECK(r.alpha_pow4[3] == Rat(1, 16));

  testutil::Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    std::array<Rat, 3> x, w;
    for (int i = 0; i < 3; ++i) {
      x[i] = rng.rational(6);
      w[i] = rng.rational(6);
      if (x[i] == 0) x[i] = 1;
      if (w[i] == 0) w[i] = 1;
      if (w[i] / x[i] <= 0) w[i] = -w[i];
    }
    auto d = sl4_diagonal(x, w);
    REQUIRE(d.conjugate);
    CHECK(d.alpha_pow4[0] * d.alpha_pow4[1] * d.alpha_pow4[2] * d.alpha_pow4[3] == Rat(1));
    // numeric check: diag(alpha) u' diag(alpha)^{-1} maps x to w within 1e-9
    for (int i = 0; i < 3; ++i) {
      double got = d.alpha[i] / d.alpha[i + 1] * rat_double(x[i]);
      CHECK(got == doctest::Approx(rat_double(w[i])).epsilon(1e-9));
    }
  }

  auto neg = sl4_diagonal({one, one, one}, {-one, one, one});
  CHECK_FALSE(neg.conjugate);
  CHECK_THROWS_AS(sl4_diagonal({Rat(0), one, one}, {one, one, one}), std::invalid_argument);
}
