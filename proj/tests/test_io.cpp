#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defq/io.hpp"
#include "defq/models.hpp"

using namespace defq;
using namespace defq::io;

namespace {

std::string pointer_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("scalars and series") {
  CHECK(to_json(Scalar(frac(-3, 4))) == Json("-3/4"));
  Scalar z(frac(1, 2), Rational(-2));
  CHECK(to_json(z) == Json{{"re", "1/2"}, {"im", "-2"}});
  CHECK(parse_scalar_at(to_json(z), "") == z);
  CHECK(parse_scalar_at(Json(7), "") == Scalar(7));

  Series s = Series::from_coeffs(1, 3, {Scalar(2), Scalar(0), z, Scalar(frac(5, 3)), Scalar(0)});
  Json j = to_json(s);
  CHECK(j["pole"] == 1);
  CHECK(j["coeffs"].size() == 5);
  CHECK(parse_series(j) == s);
}

TEST_CASE("unreduced fractions are rejected at their pointer") {
  Json j = Json::parse(R"({"pole": 0, "trunc": 2, "coeffs": ["1", "2/4", "0"]})");
  CHECK(pointer_of([&] { parse_series(j, "/element"); }) == "/element/coeffs/1");
  CHECK(pointer_of([&] { parse_series(Json::parse(R"({"pole": 0, "coeffs": []})")); }) == "/trunc");
  CHECK(pointer_of([&] {
          parse_scalar_at(Json::parse(R"({"re": "1", "im": "3/-2"})"), "/x");
        }) == "/x/im");
  CHECK(pointer_of([&] {
          parse_series(Json::parse(R"({"pole": 0, "trunc": 1, "coeffs": ["1"]})"));
        }) == "/coeffs");
}

TEST_CASE("DGLA presentations round-trip") {
  AlgebraPresentation a3 = truncated_polynomial_algebra(3);
  for (const DglaPtr& L : {make_sl2(), make_sl2_exterior(), make_cdga_model(), make_heisenberg_model(),
                           hochschild_dgla(a3, 2, 0)}) {
    Json j = to_json(*L);
    DglaPtr back = parse_dgla(j);
    CHECK(to_json(*back) == j);
    CHECK(back->dims() == L->dims());
    CHECK(back->lo() == L->lo());
    for (int p = L->lo(); p < L->hi(); ++p) CHECK(back->differential_block(p) == L->differential_block(p));
    for (int a = 0; a < L->total_dim(); ++a)
      for (int b = 0; b < L->total_dim(); ++b) CHECK(back->bracket_of(a, b) == L->bracket_of(a, b));
    CHECK(validate_dgla(*back).ok);
  }
  // a string names a reference object
  CHECK(parse_dgla(Json("sl2"))->name() == "sl2");
  CHECK(parse_dgla(Json("abelian:-1:2,0,1"))->dims() == std::vector<int>{2, 0, 1});
  CHECK(pointer_of([] { parse_dgla(Json("sl3"), "/dgla"); }) == "/dgla");
  // bracket entries must be quadruples
  Json bad = to_json(*make_sl2());
  bad["bracket"][2] = Json{0, 1};
  CHECK(pointer_of([&] { parse_dgla(bad); }) == "/bracket/2");
}

TEST_CASE("graded elements round-trip against their DGLA") {
  Rng rng(3);
  DglaPtr L = make_sl2_exterior();
  GradedElement x = random_element(rng, L, 1, 3) + random_element(rng, L, 2, 3);
  Json j = to_json(x);
  CHECK(j["dgla"] == "sl2_exterior");
  CHECK(parse_element(j, L) == x);
  CHECK(pointer_of([&] { parse_element(j, make_sl2(), "/e"); }) == "/e/dgla");
  Json wrong = j;
  wrong["coeffs"]["7"] = Json::object();
  CHECK(pointer_of([&] { parse_element(wrong, L); }) == "/coeffs/7");
}

TEST_CASE("algebras and Hochschild cochains round-trip") {
  Rng rng(5);
  for (const AlgebraPresentation& a : {matrix_algebra(2), random_associative_algebra(rng, 3)}) {
    Json j = to_json(a);
    AlgebraPresentation back = parse_algebra(j);
    CHECK(to_json(back) == j);
    CHECK(back.unit() == a.unit());
  }
  CHECK(parse_algebra(Json("poly:3")).dim() == 3);
  HochschildCochain d = random_cochain(rng, 3, 2, 2, 0);
  CHECK(parse_cochain(to_json(d)) == d);
  Json bad = to_json(d);
  bad["entries"][0]["args"] = Json{0, 5};
  CHECK(pointer_of([&] { parse_cochain(bad); }) == "/entries/0/args");
}

TEST_CASE("stack and chain data round-trip") {
  Rng rng(7);
  Nerve N(3, {{0, 1}, {1, 2}});
  Json nj = to_json(N);
  CHECK(parse_nerve(nj).simplices() == N.simplices());

  StackDatum S = random_inner_stack(rng, Nerve::full(3), matrix_algebra(2));
  StackDatum T = parse_stack(to_json(S));
  CHECK(T.nerve.simplices() == S.nerve.simplices());
  CHECK(T.G == S.G);
  CHECK(T.c == S.c);
  CHECK(to_json(T) == to_json(S));
  CHECK(validate_stack(T).ok);

  ChainDatum C = random_coboundary_chain(rng, Nerve::full(3), truncated_polynomial_algebra(2));
  ChainDatum D = parse_chain(to_json(C));
  CHECK(D.G == C.G);
  CHECK(D.c == C.c);
  CHECK(to_json(D) == to_json(C));

  StackIso iso = random_stack_iso(rng, S);
  StackIso back = parse_stack_iso(to_json(iso));
  CHECK(back.H == iso.H);
  CHECK(back.b == iso.b);

  Json bad = to_json(S);
  bad["c"][1]["value"] = Json{"1"};
  CHECK(pointer_of([&] { parse_stack(bad); }) == "/c/1/value");
}

TEST_CASE("Weyl elements, central series and Fedosov pairs round-trip") {
  Rng rng(11);
  WeylTrunc t{3, 6, 1};
  WeylForm w = random_weyl(rng, 1, 1, 0, t, 20);
  // a term with a pole
  w.add(WeylKey{0, {0, 0}, -1, {1, 1}}, Scalar(frac(2, 3), Rational(1)));
  Json j = to_json(w);
  CHECK(parse_weyl(j) == w);
  Json pole2 = j;
  pole2["terms"][0]["hbar"] = -2;
  CHECK(pointer_of([&] { parse_weyl(pole2); }) == "/terms/0/hbar");

  SymplecticModel m = SymplecticModel::standard(1);
  Matrix th(2, 2);
  th(0, 1) = Scalar(frac(1, 2));
  th(1, 0) = Scalar(frac(-1, 2));
  CentralSeries cs{m.omega, {th}};
  CentralSeries cb = parse_central_series(to_json(cs));
  CHECK(cb.leading == cs.leading);
  CHECK(cb.orders == cs.orders);

  FedosovPair p = fedosov_solve(m, cs, WeylTrunc{2, 5, 0}, random_weyl(rng, 1, 0, 3, WeylTrunc{2, 5, 0}, 30));
  FedosovPair q = parse_fedosov_pair(to_json(p));
  CHECK(q.F == p.F);
  CHECK(q.c == p.c);
  CHECK(q.model.poisson == p.model.poisson);
  CHECK(fedosov_verify(q).ok);

  Json degenerate = to_json(p);
  degenerate["model"]["omega"] = Json{{"0", "0"}, {"0", "0"}};
  CHECK(pointer_of([&] { parse_fedosov_pair(degenerate); }) == "/model/omega");
}

TEST_CASE("curvature tensors round-trip") {
  Tensor4 r(2, std::vector<std::vector<std::vector<Scalar>>>(
                   2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2))));
  r[0][1][1][0] = Scalar(3);
  r[1][0][1][0] = Scalar(3);
  r[1][1][0][0] = Scalar(frac(-1, 5));
  CHECK(parse_tensor4(to_json(r)) == r);
}

TEST_CASE("syntax errors carry an empty pointer") {
  CHECK(pointer_of([] { read_file("/nonexistent/file.json"); }) == "");
}
