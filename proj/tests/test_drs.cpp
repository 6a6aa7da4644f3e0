#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defq/drs.hpp"

using namespace defq;

namespace {

DrsSetting curved_setting(Rng& rng, const AlgebraPresentation& a, int vertices) {
  DrsSetting S = DrsSetting::constant(Nerve::full(vertices), a);
  S.curvature = random_exact_curvature(rng, S, a.center_basis(), 2);
  return S;
}

bool all_zero(const DrsCollection& w) {
  for (const auto& f : w)
    if (!f.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("restriction pulls the form back along the face") {
  AlgebraPresentation a = truncated_polynomial_algebra(2);
  DrsSetting S = DrsSetting::constant(Nerve::full(3), a);
  HochschildCochain id = identity_cochain(2, 0);
  PolyForm w(2);
  w.add(FormTerm{{1, 1}, 1u}, Scalar(1));  // t1 t2 dt1
  DrsForm top = drs_tensor(w, id);
  int top_id = S.nerve.index_of({0, 1, 2});
  int face = S.nerve.index_of({1, 2});
  std::optional<DrsForm> r = restrict_form(S, face, top_id, top);
  REQUIRE(r);
  PolyForm expect(1);
  expect.add(FormTerm{{2}, 1u}, Scalar(1));
  expect.add(FormTerm{{1}, 1u}, Scalar(-1));
  CHECK(*r == drs_tensor(expect, id));
  CHECK(restrict_form(S, S.nerve.index_of({0, 1}), top_id, top)->is_zero());
}

TEST_CASE("differential on a single term") {
  AlgebraPresentation a = truncated_polynomial_algebra(3);
  DrsSetting S = DrsSetting::constant(Nerve::full(3), a);
  // R = dt1 dt2 (x) x, a central zero-cochain
  std::vector<Series> x(3, Series(0));
  x[1] = Series(0, Scalar(1));
  PolyForm area = wedge(PolyForm::dcoordinate(2, 1), PolyForm::dcoordinate(2, 2));
  DrsForm R = drs_tensor(area, element_cochain(x));
  HochschildCochain id = identity_cochain(3, 0);
  // D(1 (x) id) = 1 (x) delta(id) - R (x) (id o x)
  DrsForm got = drs_differential(a, R, drs_tensor(PolyForm::constant(2, Scalar(1)), id));
  DrsForm expect = drs_tensor(PolyForm::constant(2, Scalar(1)), hochschild_delta(a, id));
  expect.add(drs_tensor(area, element_cochain(x)), Scalar(-1));
  CHECK(got == expect);
  CHECK(hochschild_delta(a, id) == multiplication_cochain(a, 0));
}

TEST_CASE("curvature must be closed, central and compatible") {
  Rng rng(5);
  AlgebraPresentation m = matrix_algebra(2);
  DrsSetting S = curved_setting(rng, m, 3);
  CHECK(drs_validate_curvature(S).ok);

  DrsSetting bad = S;
  int top = bad.nerve.index_of({0, 1, 2});
  std::vector<Series> e11(4, Series(0));
  e11[0] = Series(0, Scalar(1));
  PolyForm area = wedge(PolyForm::dcoordinate(2, 1), PolyForm::dcoordinate(2, 2));
  bad.curvature = drs_from_top(bad, top, drs_tensor(area, element_cochain(e11)));
  ValidationReport rep = drs_validate_curvature(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "curvature: central");

  // on a 3-simplex t1 dt2 dt3 is not closed
  DrsSetting open = DrsSetting::constant(Nerve::full(4), m);
  std::vector<Series> one(4, Series(0));
  one[0] = one[3] = Series(0, Scalar(1));
  PolyForm vol = wedge(PolyForm::coordinate(3, 1),
                       wedge(PolyForm::dcoordinate(3, 2), PolyForm::dcoordinate(3, 3)));
  open.curvature = drs_from_top(open, open.nerve.index_of({0, 1, 2, 3}),
                                drs_tensor(vol, element_cochain(one)));
  rep = drs_validate_curvature(open);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "curvature: closed");
}

TEST_CASE("the curved differential squares to zero") {
  Rng rng(17);
  for (const AlgebraPresentation& a : {truncated_polynomial_algebra(3), matrix_algebra(2)}) {
    for (int trial = 0; trial < 3; ++trial) {
      DrsSetting S = curved_setting(rng, a, 3);
      REQUIRE(drs_validate_curvature(S).ok);
      DrsCollection w = random_drs_collection(rng, S, 2, 2);
      REQUIRE(drs_validate(S, w).ok);
      DrsCollection dw = drs_differential(S, w);
      CHECK_FALSE(all_zero(dw));
      CHECK(drs_validate(S, dw).ok);
      CHECK(all_zero(drs_differential(S, dw)));
    }
  }
}

TEST_CASE("a non-central curvature breaks the square") {
  Rng rng(23);
  AlgebraPresentation m = matrix_algebra(2);
  DrsSetting S = DrsSetting::constant(Nerve::full(3), m);
  std::vector<std::vector<Scalar>> e11{{Scalar(1), Scalar(0), Scalar(0), Scalar(0)}};
  S.curvature = random_exact_curvature(rng, S, e11, 2);
  REQUIRE_FALSE(drs_validate_curvature(S).ok);
  bool nonzero = false;
  for (int trial = 0; trial < 4 && !nonzero; ++trial) {
    DrsCollection w = random_drs_collection(rng, S, 2, 1);
    nonzero = !all_zero(drs_differential(S, drs_differential(S, w)));
  }
  CHECK(nonzero);
}

TEST_CASE("incompatible collections are rejected") {
  Rng rng(29);
  AlgebraPresentation a = truncated_polynomial_algebra(2);
  DrsSetting S = DrsSetting::constant(Nerve::full(3), a);
  DrsCollection w = random_drs_collection(rng, S, 1, 1);
  int edge = S.nerve.index_of({0, 2});
  w[edge].add(FormTerm{{0}, 0u}, identity_cochain(2, 0));
  ValidationReport rep = drs_validate(S, w);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "face compatibility");
  CHECK(rep.witness.size() == 2);
  CHECK((rep.witness[0] == edge || rep.witness[1] == edge));

  // a constant collection of one closed form is compatible and closed under d
  DrsCollection c;
  for (int s = 0; s < S.nerve.size(); ++s) {
    int p = int(S.nerve.simplex(s).size()) - 1;
    c.push_back(drs_tensor(PolyForm::constant(p, Scalar(1)), multiplication_cochain(a, 0)));
  }
  CHECK(drs_validate(S, c).ok);
  CHECK(all_zero(drs_differential(S, c)));
}
