#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defq/deligne.hpp"
#include "defq/descent.hpp"

using namespace defq;

namespace {

const CosimplicialDgla& heis() {
  static CosimplicialDgla c = tuple_cech_model(make_heisenberg_model(), 2, 4);
  return c;
}

const CosimplicialDgla& abel() {
  static CosimplicialDgla c = tuple_cech_model(make_cdga_model(), 2, 4);
  return c;
}

GradedElement truncate_above(const GradedElement& x, int n) {
  GradedElement out(x.dgla_ptr(), x.trunc());
  for (int k = 1; k <= n; ++k) out += order_part(x, k);
  return out;
}

TotalCochain scaled(TotalCochain x, int s) {
  for (auto& [n, v] : x) v *= Scalar(s);
  return x;
}

TotalCochain plus(TotalCochain a, const TotalCochain& b) {
  for (const auto& [n, v] : b) {
    auto it = a.find(n);
    if (it == a.end()) a.emplace(n, v);
    else it->second += v;
  }
  return a;
}

bool same(const TotalCochain& a, const TotalCochain& b) { return is_zero(plus(a, scaled(b, -1))); }

TotalCochain at_order(const TotalCochain& x, int k) {
  TotalCochain out;
  for (const auto& [n, v] : x) out.emplace(n, order_part(v, k));
  return out;
}

}  // namespace

TEST_CASE("trivial and transported data satisfy descent") {
  for (const CosimplicialDgla* c : {&abel(), &heis()}) {
    DescentDatum triv = DescentDatum::trivial(*c, 3);
    CHECK(descent_verify(*c, triv).ok);
    Rng rng(5);
    for (int trial = 0; trial < 3; ++trial) {
      DescentIso iso = random_iso(rng, *c, 3);
      DescentDatum D = transport_datum(*c, triv, iso);
      DescentReport rep = descent_verify(*c, D);
      CHECK(rep.ok);
      CHECK(rep.conditions.size() == 4);
      CHECK(iso_verify(*c, triv, D, iso).ok);
      // transport once more, starting from a nontrivial datum
      DescentIso iso2 = random_iso(rng, *c, 3);
      DescentDatum D2 = transport_datum(*c, D, iso2);
      CHECK(descent_verify(*c, D2).ok);
      CHECK(iso_verify(*c, D, D2, iso2).ok);
      DescentTwoIso r{random_element(rng, c->level(0), -1, 3)};
      DescentIso moved = transport_iso(*c, D2, iso2, r);
      CHECK(iso_verify(*c, D, D2, moved).ok);
      CHECK(two_iso_verify(*c, D, D2, iso2, moved, r).ok);
    }
  }
}

TEST_CASE("transported data are genuinely nonabelian") {
  Rng rng(9);
  const CosimplicialDgla& c = heis();
  DescentDatum D = random_exact_datum(rng, c, 3);
  // the linearized conditions alone would not hold at order 2
  DescentDeviation dev = descent_deviation(c, D);
  CHECK(dev.Z.is_zero());
  GradedElement naive = differential(D.g) - (face_embed(c, D.lambda, 1, {1}) - face_embed(c, D.lambda, 1, {0}));
  CHECK_FALSE(naive.is_zero());
  CHECK(first_order(naive) >= 2);
}

TEST_CASE("perturbing c at first order breaks the tetrahedron at order 1") {
  Rng rng(17);
  for (const CosimplicialDgla* c : {&abel(), &heis()}) {
    DescentDatum D = random_exact_datum(rng, *c, 2);
    GradedElement eps = order_part(random_element(rng, c->level(2), -1, 2, 1, 1), 1);
    // keep eps out of the coboundaries by checking the outcome, not assuming it
    D.t += eps;
    DescentReport rep = descent_verify(*c, D);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first_failing_order == 1);
    CHECK(rep.conditions[0].ok);
    CHECK(rep.conditions[1].ok);
    CHECK_FALSE(rep.conditions[2].ok);
    CHECK(rep.conditions[2].first_failing_order == 1);
    GradedElement cob = coboundary(*c, 2, order_part(eps, 1));
    CHECK(rep.conditions[3].ok == cob.is_zero());
    if (!cob.is_zero()) CHECK(rep.conditions[3].first_failing_order == 1);
  }
}

TEST_CASE("abelian deviations are the total differential of the data") {
  const CosimplicialDgla& c = abel();
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    DescentDatum D = random_datum(rng, c, 3);
    TotalCochain data{{0, D.lambda}, {1, D.g}, {2, D.t}};
    TotalCochain oracle = total_differential(c, data);
    oracle.erase(4);
    for (int k = 1; k <= 3; ++k) {
      DescentDeviation dev = descent_deviation(c, D);
      TotalCochain got{{0, dev.R}, {1, dev.Z}, {2, -dev.tau}, {3, -dev.Phi}};
      CHECK(same(at_order(got, k), at_order(oracle, k)));
    }
    DescentDatum E = random_datum(rng, c, 3);
    DescentIso iso = random_iso(rng, c, 3);
    IsoDeviation idev = iso_deviation(c, D, E, iso);
    // (X - X') + D(-h, s)
    TotalCochain y{{0, -iso.h}, {1, iso.s}};
    TotalCochain iso_oracle =
        plus(TotalCochain{{0, D.lambda - E.lambda}, {1, D.g - E.g}, {2, D.t - E.t}},
             total_differential(c, y));
    iso_oracle.erase(3);
    CHECK(same(TotalCochain{{0, idev.C}, {1, idev.S}, {2, idev.Psi}}, iso_oracle));

    DescentIso other = random_iso(rng, c, 3);
    DescentTwoIso r{random_element(rng, c.level(0), -1, 3)};
    TwoIsoDeviation tdev = two_iso_deviation(c, D, E, iso, other, r);
    TotalCochain two_oracle = plus(TotalCochain{{0, other.h - iso.h}, {1, iso.s - other.s}},
                                   total_differential(c, TotalCochain{{0, -r.r}}));
    two_oracle.erase(2);
    CHECK(same(TotalCochain{{0, tdev.P}, {1, tdev.Omega}}, two_oracle));
  }
}

TEST_CASE("deviation of near-descent data is closed at the first failing order") {
  Rng rng(33);
  for (const CosimplicialDgla* c : {&abel(), &heis()}) {
    // n = 0: any data
    DescentDatum D0 = random_datum(rng, *c, 2);
    DeviationResult r0 = deviation_cocycle(*c, D0, 1);
    CHECK(r0.precondition_ok);
    CHECK(r0.closed);
    CHECK_FALSE(is_zero(r0.cochain));
    // n = 1: exact datum plus an order-2 perturbation
    DescentDatum D1 = random_exact_datum(rng, *c, 2);
    DescentDatum eps = random_datum(rng, *c, 2, 2);
    D1.lambda += eps.lambda;
    D1.g += eps.g;
    D1.t += eps.t;
    DeviationResult r1 = deviation_cocycle(*c, D1, 2);
    CHECK(r1.precondition_ok);
    CHECK(r1.closed);
    CHECK_FALSE(is_zero(r1.cochain));
    // the closure is not automatic: flipping the level-3 sign breaks it
    TotalCochain flipped = r1.cochain;
    flipped.at(3) *= Scalar(-1);
    if (!flipped.at(3).is_zero()) CHECK_FALSE(is_zero(total_differential(*c, flipped)));
    // asking for order 2 on data that already fails at order 1
    DeviationResult bad = deviation_cocycle(*c, D0, 2);
    CHECK_FALSE(bad.precondition_ok);
    CHECK(bad.first_failing_order == 1);
  }
}

TEST_CASE("iso and two-iso deviations are closed at the first failing order") {
  Rng rng(41);
  for (const CosimplicialDgla* c : {&abel(), &heis()}) {
    DescentDatum triv = DescentDatum::trivial(*c, 2);
    // n = 0
    DescentDatum A = random_exact_datum(rng, *c, 2);
    DescentDatum B = random_exact_datum(rng, *c, 2);
    DeviationResult i0 = iso_deviation_cocycle(*c, A, B, random_iso(rng, *c, 2), 1);
    CHECK(i0.precondition_ok);
    CHECK(i0.closed);
    // n = 1: both data transported from the trivial one, iso correct to first order
    DescentIso ia = random_iso(rng, *c, 2), ib = random_iso(rng, *c, 2);
    A = transport_datum(*c, triv, ia);
    B = transport_datum(*c, triv, ib);
    DescentIso near{order_part(ib.h - ia.h, 1), order_part(ib.s - ia.s, 1)};
    DescentIso noise = random_iso(rng, *c, 2, 2);
    near.h += noise.h;
    near.s += noise.s;
    DeviationResult i1 = iso_deviation_cocycle(*c, A, B, near, 2);
    CHECK(i1.precondition_ok);
    CHECK(i1.closed);
    CHECK_FALSE(is_zero(i1.cochain));

    // two-isos between exact isos related by r0
    for (int n = 0; n <= 1; ++n) {
      DescentIso iso = random_iso(rng, *c, 2);
      DescentDatum to = transport_datum(*c, A, iso);
      DescentTwoIso r0{random_element(rng, c->level(0), -1, 2)};
      DescentIso other = transport_iso(*c, to, iso, r0);
      DescentTwoIso r{truncate_above(r0.r, n) +
                      order_part(random_element(rng, c->level(0), -1, 2, n + 1, 1), n + 1)};
      DeviationResult t = two_iso_deviation_cocycle(*c, A, to, iso, other, r, n + 1);
      CHECK(t.precondition_ok);
      CHECK(t.closed);
    }
  }
}

TEST_CASE("descent operations reject misplaced inputs") {
  const CosimplicialDgla& c = abel();
  DescentDatum D = DescentDatum::trivial(c, 2);
  std::swap(D.g, D.t);
  CHECK_THROWS_AS(descent_verify(c, D), UsageError);
  DescentDatum E = DescentDatum::trivial(c, 2);
  E.lambda[c.level(0)->offset(1)] = Series(2, Scalar(1));
  CHECK_THROWS_AS(descent_verify(c, E), DomainError);
  CHECK_THROWS_AS(deviation_cocycle(tuple_cech_model(make_cdga_model(), 2, 3),
                                    DescentDatum::trivial(tuple_cech_model(make_cdga_model(), 2, 3), 2), 1),
                  UsageError);
}
