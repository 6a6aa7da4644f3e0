#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defq/deligne.hpp"
#include "defq/models.hpp"

using namespace defq;

namespace {

// e^{ad X} lambda - sum_{k>=1} ad(X)^{k-1}(dX)/k!, written out directly
GradedElement gauge_oracle(const GradedElement& X, const GradedElement& lambda) {
  GradedElement out = exp_ad(X, lambda);
  GradedElement term = differential(X);
  Rational fact = 1;
  for (int k = 1; !term.is_zero(); ++k) {
    fact *= k;
    out -= term * Scalar(1 / fact);
    term = bracket(X, term);
  }
  return out;
}

}  // namespace

TEST_CASE("gauge action through the semidirect extension matches the closed formula") {
  Rng rng(31);
  DglaPtr L = make_sl2_interval();
  CHECK(validate_dgla(*semidirect_extension(L)).ok);
  for (int trial = 0; trial < 30; ++trial) {
    int n = rng.uniform(1, 4);
    GradedElement X = random_element(rng, L, 0, n);
    GradedElement lambda = random_element(rng, L, 1, n);
    CHECK(gauge_apply(X, lambda) == gauge_oracle(X, lambda));
  }
}

TEST_CASE("gauge action preserves Maurer-Cartan elements and is a group action") {
  Rng rng(32);
  DglaPtr L = make_sl2_exterior();
  for (int trial = 0; trial < 30; ++trial) {
    int n = rng.uniform(1, 4);
    // x e1 + s x e2 is Maurer-Cartan since [x, x] = 0
    GradedElement lambda(L, n);
    Series s = rng.series(n, 0);
    for (int i = 0; i < 3; ++i) {
      lambda[3 + i] = rng.series(n, 1);
      lambda[6 + i] = lambda[3 + i] * s;
    }
    REQUIRE(is_maurer_cartan(lambda));
    GradedElement X = random_element(rng, L, 0, n);
    GradedElement Y = random_element(rng, L, 0, n);
    GradedElement mu = gauge_apply(Y, lambda);
    CHECK(is_maurer_cartan(mu));
    CHECK(gauge_apply(bch(X, Y), lambda) == gauge_apply(X, mu));
    GaugeArrow g = GaugeArrow::make(Y, lambda);
    GaugeArrow h = GaugeArrow::make(X, mu);
    GaugeArrow gh = compose_gauge(h, g);
    CHECK(gh.target == gauge_apply(gh.X, gh.source));
    CHECK(gauge_apply(g.inverse().X, mu) == lambda);
    // only composable when g happens to fix its source
    if (g.target != g.source) CHECK_THROWS_AS(compose_gauge(g, g), UsageError);
  }
}

TEST_CASE("non-Maurer-Cartan elements are detected") {
  DglaPtr L = make_sl2_exterior();
  GradedElement lambda(L, 2);
  lambda[3] = Series::monomial(2, 1, 1);  // e tensor e1
  lambda[7] = Series::monomial(2, 1, 1);  // f tensor e2
  CHECK_FALSE(mc_defect(lambda).is_zero());
  CHECK_FALSE(is_maurer_cartan(lambda));
  GradedElement bad = GradedElement::basis(L, 2, 0, Series(2, 1));
  CHECK_THROWS_AS(gauge_apply(bad, lambda), DomainError);
}
