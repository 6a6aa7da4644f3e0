#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "defq/dgla.hpp"
#include "defq/models.hpp"

using namespace defq;

namespace {

// 2x2 matrices over the truncated series ring, used as an independent
// oracle for BCH in sl2
using M2 = std::array<Series, 4>;

M2 mzero(int n) { return {Series(n), Series(n), Series(n), Series(n)}; }
M2 mid(int n) { return {Series(n, 1), Series(n), Series(n), Series(n, 1)}; }
M2 madd(const M2& a, const M2& b) {
  M2 r = a;
  for (int i = 0; i < 4; ++i) r[i] += b[i];
  return r;
}
M2 mmul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}
M2 mscale(M2 a, const Scalar& s) {
  for (auto& x : a) x *= s;
  return a;
}
M2 mexp(const M2& x, int n) {
  M2 r = mid(n), t = mid(n);
  for (int k = 1; k <= n; ++k) {
    t = mscale(mmul(t, x), Scalar(frac(1, k)));
    r = madd(r, t);
  }
  return r;
}
M2 mlog(const M2& u, int n) {
  M2 z = madd(u, mscale(mid(n), Scalar(-1)));
  M2 r = mzero(n), p = mid(n);
  for (int k = 1; k <= n; ++k) {
    p = mmul(p, z);
    r = madd(r, mscale(p, Scalar(frac(k % 2 ? 1 : -1, k))));
  }
  return r;
}
// e = E12, f = E21, h = diag(1,-1)
M2 to_matrix(const GradedElement& x) {
  int n = x.trunc();
  M2 m = mzero(n);
  m[1] = x[0];
  m[2] = x[1];
  m[0] = x[2];
  m[3] = -x[2];
  return m;
}

}  // namespace

TEST_CASE("reference presentations satisfy the DGLA axioms") {
  for (const auto& L : {make_sl2(), make_sl2_exterior(), make_sl2_interval(),
                        make_abelian_dgla(-1, {2, 3, 1})}) {
    ValidationReport r = validate_dgla(*L);
    INFO(L->name(), " ", r.axiom, " ", r.detail);
    CHECK(r.ok);
  }
}

TEST_CASE("broken presentations are rejected with a witness") {
  ValidationReport r = validate_dgla(*make_broken_d_squared());
  CHECK_FALSE(r.ok);
  CHECK(r.axiom == "d_squared");
  CHECK(r.witness == std::vector<int>{0});
  ValidationReport j = validate_dgla(*make_broken_jacobi());
  CHECK_FALSE(j.ok);
  CHECK(j.axiom == "jacobi");
  CHECK(j.witness.size() == 3);
}

TEST_CASE("presentation rejects degree-violating data") {
  auto L = std::make_shared<DglaPresentation>("x", 0, std::vector<int>{1, 1});
  CHECK_THROWS_AS(L->add_bracket(0, 1, 0, Scalar(1)), UsageError);
  CHECK_THROWS_AS(L->add_differential(1, 0, Scalar(1)), UsageError);
}

TEST_CASE("bch agrees with matrix exp and log in sl2") {
  Rng rng(11);
  DglaPtr L = make_sl2();
  for (int trial = 0; trial < 40; ++trial) {
    int n = rng.uniform(1, 5);
    GradedElement x = random_element(rng, L, 0, n);
    GradedElement y = random_element(rng, L, 0, n);
    GradedElement z = bch(x, y);
    M2 oracle = mlog(mmul(mexp(to_matrix(x), n), mexp(to_matrix(y), n)), n);
    M2 got = to_matrix(z);
    for (int i = 0; i < 4; ++i) CHECK(got[i] == oracle[i]);
  }
}

TEST_CASE("bch group laws") {
  Rng rng(12);
  DglaPtr L = make_sl2_interval();
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform(1, 4);
    GradedElement x = random_element(rng, L, 0, n);
    GradedElement y = random_element(rng, L, 0, n);
    GradedElement z = random_element(rng, L, 0, n);
    CHECK(bch(bch(x, y), z) == bch(x, bch(y, z)));
    CHECK(bch(x, -x).is_zero());
    CHECK(bch(x, GradedElement(L, n)) == x);
  }
}

TEST_CASE("exp ad is a DGLA automorphism") {
  Rng rng(13);
  DglaPtr L = make_sl2_exterior();
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform(1, 4);
    GradedElement x = random_element(rng, L, 0, n);
    GradedElement u = random_element(rng, L, 1, n, 0);
    GradedElement v = random_element(rng, L, 1, n, 0);
    CHECK(exp_ad(x, bracket(u, v)) == bracket(exp_ad(x, u), exp_ad(x, v)));
    // exp(ad x) exp(ad y) = exp(ad bch(x, y))
    GradedElement y = random_element(rng, L, 0, n);
    CHECK(exp_ad(x, exp_ad(y, u)) == exp_ad(bch(x, y), u));
  }
}

TEST_CASE("bch rejects arguments outside the maximal ideal") {
  DglaPtr L = make_sl2();
  GradedElement x = GradedElement::basis(L, 2, 0, Series(2, 1));
  CHECK_THROWS_AS(bch(x, x), DomainError);
}
