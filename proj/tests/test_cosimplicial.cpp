#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defq/cosimplicial.hpp"
#include "defq/models.hpp"

using namespace defq;

namespace {

// heis tensor B automorphism x -> 2x, y -> y, z -> 2z
LinearMap heisenberg_scaling(const DglaPtr& L, bool break_it = false) {
  LinearMap f(L->total_dim(), L->total_dim());
  for (int i = 0; i < L->total_dim(); ++i) {
    int comp = i % 3;
    int factor = comp == 1 ? 1 : 2;
    if (break_it && comp == 2) factor = 1;
    f.add(i, i, Scalar(factor));
  }
  return f;
}

SimplicialDglaSheaf two_set_sheaf(const DglaPtr& L, const LinearMap& twist) {
  Nerve N(2, {{0, 1}});
  SimplicialDglaSheaf sh;
  sh.nerve = N;
  sh.fiber.assign(N.size(), L);
  int s0 = N.index_of({0}), s1 = N.index_of({1}), s01 = N.index_of({0, 1});
  sh.restriction[{s0, s01}] = LinearMap::identity(L->total_dim());
  sh.restriction[{s1, s01}] = twist;
  return sh;
}

TotalCochain random_total(Rng& rng, const CosimplicialDgla& c, int total_degree, int trunc) {
  TotalCochain x;
  for (int n = 0; n <= c.cap(); ++n) {
    int p = total_degree - n;
    if (p < c.level(n)->lo() || p > c.level(n)->hi()) continue;
    x.emplace(n, random_element(rng, c.level(n), p, trunc, 1, 3));
  }
  return x;
}

}  // namespace

TEST_CASE("small cdga models are DGLAs") {
  DglaPtr B = make_cdga_model();
  CHECK(B->lo() == -1);
  CHECK(B->dims() == std::vector<int>{2, 4, 4, 2});
  CHECK(validate_dgla(*B).ok);
  DglaPtr H = make_heisenberg_model();
  CHECK(H->dims() == std::vector<int>{6, 12, 12, 6});
  CHECK(validate_dgla(*H).ok);
}

TEST_CASE("nerve closure and weak chains") {
  Nerve N(2, {{1, 0}});
  CHECK(N.size() == 3);
  CHECK(N.simplex(2) == Simplex{0, 1});
  CHECK(N.chains(0).size() == 3);
  CHECK(N.chains(1).size() == 5);
  CHECK(N.chains(2).size() == 7);
  Nerve F = Nerve::full(3);
  CHECK(F.size() == 7);
  CHECK(F.dimension() == 2);
  Nerve path(3, {{0, 1}, {1, 2}});
  CHECK(path.size() == 5);
  CHECK_FALSE(path.contains({0, 2}));
  CHECK_THROWS_AS(Nerve(2, {{0, 0}}), UsageError);
  CHECK_THROWS_AS(Nerve(2, {{0, 2}}), UsageError);
}

TEST_CASE("tuple model satisfies the cosimplicial identities") {
  DglaPtr H = make_heisenberg_model();
  CosimplicialDgla c = tuple_cech_model(H, 2, 3);
  for (int n = 0; n <= 3; ++n) CHECK(c.level(n)->total_dim() == 36 * (1 << (n + 1)));
  ValidationReport rep = validate_cosimplicial(c, 1);
  CHECK_MESSAGE(rep.ok, rep.axiom);
  CHECK(validate_dgla(*c.level(1)).ok);
}

TEST_CASE("face embedding in the tuple model reads off the chosen entries") {
  DglaPtr B = make_cdga_model();
  CosimplicialDgla c = tuple_cech_model(B, 2, 3);
  Rng rng(7);
  GradedElement x = random_element(rng, c.level(1), 1, 2, 1, 1);
  // level 1 -> level 3 along vertices {0, 2}; value at (i0 i1 i2 i3) is x(i0 i2)
  GradedElement y = face_embed(c, x, 3, {0, 2});
  int d = B->dim(1);
  auto pos = [&](const DglaPtr& L, int tuple_index, int local) {
    return L->offset(1) + tuple_index * d + local;
  };
  for (int t = 0; t < 16; ++t) {
    int i0 = t >> 3 & 1, i2 = t >> 1 & 1;
    int src = i0 * 2 + i2;
    for (int a = 0; a < d; ++a) CHECK(y[pos(c.level(3), t, a)] == x[pos(c.level(1), src, a)]);
  }
  CHECK(face_embed(c, x, 1, {0, 1}) == x);
  CHECK_THROWS_AS(face_embed(c, x, 3, {2, 0}), UsageError);
}

TEST_CASE("Cech complex of a sheaf on a two-set cover") {
  DglaPtr H = make_heisenberg_model();
  SimplicialDglaSheaf sh = two_set_sheaf(H, heisenberg_scaling(H));
  CHECK(validate_sheaf(sh).ok);
  CosimplicialDgla c = cech_complex(sh, 2);
  CHECK(c.level(0)->total_dim() == 3 * 36);
  CHECK(c.level(1)->total_dim() == 5 * 36);
  CHECK(c.level(2)->total_dim() == 7 * 36);
  ValidationReport rep = validate_cosimplicial(c, 1);
  CHECK_MESSAGE(rep.ok, rep.axiom);

  SimplicialDglaSheaf cst = SimplicialDglaSheaf::constant(Nerve::full(3), make_cdga_model());
  CHECK(validate_sheaf(cst).ok);
  CHECK(validate_cosimplicial(cech_complex(cst, 2), 1).ok);
}

TEST_CASE("restrictions that are not DGLA morphisms are rejected") {
  DglaPtr H = make_heisenberg_model();
  SimplicialDglaSheaf sh = two_set_sheaf(H, heisenberg_scaling(H, true));
  ValidationReport rep = validate_sheaf(sh);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "restriction: bracket");
  CHECK_FALSE(validate_cosimplicial(cech_complex(sh, 1), 1).ok);
}

TEST_CASE("swapped cofaces break the identities") {
  DglaPtr B = make_cdga_model();
  CosimplicialDgla good = tuple_cech_model(B, 2, 2);
  std::vector<DglaPtr> levels{good.level(0), good.level(1), good.level(2)};
  std::vector<std::vector<LinearMap>> cof(2), cod(2);
  for (int n = 0; n < 2; ++n) {
    for (int i = 0; i <= n + 1; ++i) cof[n].push_back(good.coface(n, i));
    for (int j = 0; j <= n; ++j) cod[n].push_back(good.codegeneracy(n, j));
  }
  std::swap(cof[1][0], cof[1][2]);
  CosimplicialDgla bad("bad", levels, cof, cod);
  CHECK_FALSE(validate_cosimplicial(bad, 0).ok);
}

TEST_CASE("total differential squares to zero") {
  DglaPtr H = make_heisenberg_model();
  CosimplicialDgla c = cech_complex(two_set_sheaf(H, heisenberg_scaling(H)), 3);
  Rng rng(11);
  for (int deg = 0; deg <= 3; ++deg) {
    TotalCochain x = random_total(rng, c, deg, 2);
    TotalCochain dd = total_differential(c, total_differential(c, x));
    CHECK(is_zero(dd));
  }
  // a cochain concentrated in level 0 with d x = 0 has D x = coboundary
  GradedElement x0(c.level(0), 2);
  TotalCochain one{{0, x0}};
  CHECK(is_zero(total_differential(c, one)));
}

TEST_CASE("one-element cover gives the constant cosimplicial DGLA") {
  DglaPtr B = make_cdga_model();
  CosimplicialDgla c = cech_complex(SimplicialDglaSheaf::constant(Nerve(1, {{0}}), B), 3);
  CosimplicialDgla k = constant_cosimplicial(B, 3);
  for (int n = 0; n <= 3; ++n) CHECK(c.level(n)->dims() == B->dims());
  for (int n = 0; n < 3; ++n)
    for (int i = 0; i <= n + 1; ++i) CHECK(c.coface(n, i).to_dense() == k.coface(n, i).to_dense());
  CHECK(validate_cosimplicial(k, 2).ok);
}
