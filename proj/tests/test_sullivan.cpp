#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defq/descent.hpp"
#include "defq/sullivan.hpp"

using namespace defq;

namespace {

FormTerm term(std::vector<int> e, unsigned mask) { return FormTerm{std::move(e), mask}; }

PolyForm random_form(Rng& rng, int p, int max_deg) {
  PolyForm w(p);
  for (int f = 0; f <= p; ++f)
    for (const auto& t : form_terms(p, f, max_deg))
      if (rng.coin(1, 3)) w.add(t, rng.scalar());
  return w;
}

// composite f after g as vertex maps
std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
  std::vector<int> out;
  for (int v : g) out.push_back(f[v]);
  return out;
}

}  // namespace

TEST_CASE("de Rham differential on simplices") {
  PolyForm t1 = PolyForm::coordinate(2, 1);
  PolyForm dt1(2);
  dt1.add(term({0, 0}, 1u), Scalar(1));
  CHECK(sullivan_d(t1) == dt1);
  CHECK(sullivan_d(dt1).is_zero());
  // dt0 = -dt1 - dt2
  PolyForm dt0 = PolyForm::dcoordinate(2, 0);
  CHECK(dt0 + PolyForm::dcoordinate(2, 1) + PolyForm::dcoordinate(2, 2) == PolyForm(2));
  Rng rng(3);
  for (int p = 1; p <= 3; ++p)
    for (int trial = 0; trial < 5; ++trial) {
      PolyForm w = random_form(rng, p, 3);
      CHECK(sullivan_d(sullivan_d(w)).is_zero());
      // Leibniz with the graded sign
      PolyForm a = random_form(rng, p, 2), b = random_form(rng, p, 2);
      PolyForm a0(p), a1(p);
      for (const auto& [t, c] : a.terms()) (t.form_degree() % 2 ? a1 : a0).add(t, c);
      PolyForm lhs = sullivan_d(wedge(a, b));
      PolyForm rhs = wedge(sullivan_d(a), b) + wedge(a0, sullivan_d(b)) -
                     wedge(a1, sullivan_d(b));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("wedge is graded commutative") {
  PolyForm dt1 = PolyForm::dcoordinate(2, 1), dt2 = PolyForm::dcoordinate(2, 2);
  CHECK(wedge(dt1, dt2) == wedge(dt2, dt1) * Scalar(-1));
  CHECK(wedge(dt1, dt1).is_zero());
  CHECK(wedge_sign(0b10, 0b01) == -1);
  CHECK(wedge_sign(0b01, 0b10) == 1);
  CHECK(wedge_sign(0b11, 0b01) == 0);
}

TEST_CASE("face restriction by substitution") {
  // t1 t2 dt1 on the 2-simplex
  PolyForm w(2);
  w.add(term({1, 1}, 1u), Scalar(1));
  CHECK(restrict_to_face(w, {0, 1}).is_zero());
  CHECK(restrict_to_face(w, {0, 2}).is_zero());
  // on {1, 2}: t1 = 1 - s, t2 = s, so the form is (s^2 - s) ds
  PolyForm expect(1);
  expect.add(term({2}, 1u), Scalar(1));
  expect.add(term({1}, 1u), Scalar(-1));
  CHECK(restrict_to_face(w, {1, 2}) == expect);
  CHECK_THROWS_AS(restrict_to_face(w, {2, 1}), UsageError);
}

TEST_CASE("pullback is functorial and commutes with d and wedge") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    PolyForm w = random_form(rng, 3, 2);
    PolyForm v = random_form(rng, 3, 2);
    std::vector<int> f = coface_map(3, rng.uniform(0, 3));   // [2] -> [3]
    std::vector<int> g = codegeneracy_map(2, rng.uniform(0, 2));  // [3] -> [2]
    CHECK(pullback(pullback(w, f), g) == pullback(w, compose(f, g)));
    CHECK(sullivan_d(pullback(w, g)) == pullback(sullivan_d(w), g));
    CHECK(pullback(wedge(w, v), f) == wedge(pullback(w, f), pullback(v, f)));
  }
  // cosimplicial identity on forms: sigma^j delta^j = id
  PolyForm w = random_form(rng, 1, 3);
  CHECK(pullback(w, compose(codegeneracy_map(1, 1), coface_map(2, 1))) == w);
}

TEST_CASE("polynomial forms on a simplex are acyclic") {
  for (int p = 0; p <= 3; ++p) {
    std::vector<int> dims = sullivan_cohomology_dims(p, 3);
    CHECK(dims[0] == 1);
    for (int k = 1; k <= p; ++k) CHECK(dims[k] == 0);
  }
}

TEST_CASE("totalization of a constant cosimplicial DGLA") {
  DglaPtr B = make_cdga_model();
  Totalization T = totalize(constant_cosimplicial(B, 2), 2, 4);
  const DglaPresentation& P = *T.presentation;
  for (int k = -1; k <= 2; ++k) CHECK(P.dim(k) == B->dim(k));
  CHECK(P.dim(3) == 0);
  CHECK(P.dim(4) == 0);
  int kernel0 = B->dim(0) - rank(B->differential_block(0));
  CHECK(tot_closed_dimension(T, 0) == kernel0);
  for (const auto& fam : T.basis[0]) CHECK(tot_compatible(constant_cosimplicial(B, 2), fam).ok);

  DglaPtr H = make_heisenberg_model();
  CosimplicialDgla cH = constant_cosimplicial(H, 2);
  Totalization TH = totalize(cH, 2, 2);
  CHECK(TH.presentation->dim(0) == H->dim(0));
  CHECK(tot_closed_dimension(TH, 0) == H->dim(0) - rank(H->differential_block(0)));
  CHECK(TH.dropped_brackets == 0);
  CHECK(validate_dgla(*TH.presentation).ok);

  Totalization Z = totalize(constant_cosimplicial(make_abelian_dgla(0, {0}), 2), 2);
  CHECK(Z.presentation->total_dim() == 0);
}

TEST_CASE("totalization of the two-set Cech complex matches the chain count") {
  // level 0: three copies of L; level 1: two degenerate chains carrying constants and
  // two nondegenerate chains, each with polynomials of degree <= D vanishing at both
  // ends (D - 1 of them) and all 1-forms (D + 1 of them)
  DglaPtr B = make_cdga_model();
  CosimplicialDgla c = cech_complex(SimplicialDglaSheaf::constant(Nerve(2, {{0, 1}}), B), 1);
  for (int D : {1, 3, 4}) {
    Totalization T = totalize(c, 1, D, false);
    for (int k = -1; k <= 3; ++k) {
      int Lk = (k >= -1 && k <= 2) ? B->dim(k) : 0;
      int Lk1 = (k - 1 >= -1 && k - 1 <= 2) ? B->dim(k - 1) : 0;
      int expect = 3 * Lk + 2 * ((D - 1) * Lk + (D + 1) * Lk1);
      CHECK(T.presentation->dim(k) == expect);
    }
  }
}

TEST_CASE("incompatible families are rejected") {
  DglaPtr B = make_cdga_model();
  CosimplicialDgla c = constant_cosimplicial(B, 1);
  TotFamily w = tot_zero(c, 1);
  w.levels[0].add(FormTerm{{}, 0}, B->offset(0), Scalar(1));
  ValidationReport rep = tot_compatible(c, w);
  CHECK_FALSE(rep.ok);
  CHECK(rep.witness == std::vector<int>{0, 1, 0});
  Totalization T = totalize(c, 1, 2);
  CHECK_THROWS_AS(T.coordinates(0, w), DomainError);
}

TEST_CASE("Whitney forms intertwine the total differentials") {
  DglaPtr B = make_cdga_model();
  CosimplicialDgla c = tuple_cech_model(B, 2, 3);
  Rng rng(12);
  for (int trial = 0; trial < 4; ++trial) {
    int deg = rng.uniform(0, 2);
    TotalCochain x;
    for (int n = 0; n <= 2; ++n) {
      int p = deg - n;
      if (p < -1 || p > 2) continue;
      x.emplace(n, random_normalized_element(rng, c, n, p, 1));
    }
    TotalCochain dx = total_differential(c, x);
    dx.erase(3);
    TotFamily W = whitney(c, x, 1, 2);
    CHECK(tot_compatible(c, W).ok);
    TotFamily lhs = tot_differential(W);
    TotFamily rhs = whitney(c, dx, 1, 2);
    CHECK(is_zero(lhs + scaled(rhs, Scalar(-1))));
  }
  // without normalization the codegeneracy compatibility fails
  TotalCochain raw{{1, random_element(rng, c.level(1), 0, 1, 1, 0)}};
  bool degenerate_part = false;
  for (int j = 0; j < 1; ++j)
    degenerate_part = degenerate_part || !codegeneracy(c, 0, j, raw.at(1)).is_zero();
  if (degenerate_part) CHECK_FALSE(tot_compatible(c, whitney(c, raw, 1, 2)).ok);
}

TEST_CASE("normalized abelian descent data give Maurer-Cartan Whitney forms") {
  DglaPtr B = make_cdga_model();
  CosimplicialDgla c = tuple_cech_model(B, 2, 3);
  Rng rng(19);
  for (int trial = 0; trial < 3; ++trial) {
    DescentIso iso{random_element(rng, c.level(0), 0, 2), random_normalized_element(rng, c, 1, -1, 2)};
    DescentDatum D = transport_datum(c, DescentDatum::trivial(c, 2), iso);
    REQUIRE(descent_verify(c, D).ok);
    TotalCochain x{{0, D.lambda}, {1, D.g}, {2, D.t}};
    for (int k = 1; k <= 2; ++k) {
      TotFamily W = whitney(c, x, k, 3);
      CHECK(tot_compatible(c, W).ok);
      CHECK(is_zero(whitney_mc_defect(c, x, k, 3)));
    }
    // break the datum: the Whitney form stops being flat
    DescentDatum E = D;
    E.g += random_normalized_element(rng, c, 1, 0, 2);
    TotalCochain y{{0, E.lambda}, {1, E.g}, {2, E.t}};
    bool flat = is_zero(whitney_mc_defect(c, y, 1, 3)) && is_zero(whitney_mc_defect(c, y, 2, 3));
    CHECK(flat == descent_verify(c, E).ok);
  }
}
