#include "defq/models.hpp"

namespace defq {

namespace {

// sl2 structure constants on (e, f, h) = (0, 1, 2)
void sl2_brackets(std::vector<BracketTerm>& out) {
  out.push_back({0, 1, 2, Scalar(1)});
  out.push_back({2, 0, 0, Scalar(2)});
  out.push_back({2, 1, 1, Scalar(-2)});
}

// Graded-commutative algebra spanned by u^a w^b s^c q^e with |u| = -1,
// |w| = 1, |s| = 0, |q| = 2, relations s^2 = q^2 = qw = 0, du = s, dw = q.
struct SmallCdga {
  struct Mono {
    int a, b, c, e;
    int degree() const { return -a + b + 2 * e; }
  };
  std::vector<Mono> monos;  // sorted by degree

  SmallCdga() {
    for (int deg = -1; deg <= 2; ++deg)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            for (int e = 0; e < 2; ++e)
              if (!(b && e) && -a + b + 2 * e == deg) monos.push_back({a, b, c, e});
  }
  int find(int a, int b, int c, int e) const {
    for (size_t i = 0; i < monos.size(); ++i)
      if (monos[i].a == a && monos[i].b == b && monos[i].c == c && monos[i].e == e) return int(i);
    return -1;
  }
  // x * y as (index, sign), index -1 when zero
  std::pair<int, int> mul(int x, int y) const {
    const Mono& m = monos[x];
    const Mono& n = monos[y];
    if (m.a + n.a > 1 || m.b + n.b > 1 || m.c + n.c > 1 || m.e + n.e > 1) return {-1, 0};
    if (m.b + n.b == 1 && m.e + n.e == 1) return {-1, 0};
    int sign = (m.b && n.a) ? -1 : 1;
    return {find(m.a + n.a, m.b + n.b, m.c + n.c, m.e + n.e), sign};
  }
  // d x as a list of (index, sign)
  std::vector<std::pair<int, int>> d(int x) const {
    const Mono& m = monos[x];
    std::vector<std::pair<int, int>> out;
    if (m.a && !m.c) out.push_back({find(0, m.b, 1, m.e), 1});
    if (m.b && !m.e) out.push_back({find(m.a, 0, m.c, 1), m.a ? -1 : 1});
    return out;
  }
};

// g tensor B for a Lie algebra g in degree 0 with structure constants `br`
DglaPtr tensor_with_cdga(const std::string& name, int lie_dim,
                         const std::vector<BracketTerm>& br) {
  SmallCdga B;
  std::vector<int> dims(4, 0);
  for (const auto& m : B.monos) dims[m.degree() + 1] += lie_dim;
  auto L = std::make_shared<DglaPresentation>(name, -1, dims);
  // monomials are sorted by degree, so this layout is degree-major
  auto idx = [&](int mono, int x) { return mono * lie_dim + x; };
  int n = int(B.monos.size());
  for (int m = 0; m < n; ++m)
    for (const auto& [t, sg] : B.d(m))
      for (int x = 0; x < lie_dim; ++x) L->add_differential(idx(m, x), idx(t, x), Scalar(sg));
  for (int m1 = 0; m1 < n; ++m1)
    for (int m2 = 0; m2 < n; ++m2) {
      auto [t, sg] = B.mul(m1, m2);
      if (t < 0) continue;
      for (const auto& b : br) L->add_bracket(idx(m1, b.a), idx(m2, b.b), idx(t, b.k), b.c * Scalar(sg));
    }
  return L;
}

}  // namespace

DglaPtr make_abelian_dgla(int lo, std::vector<int> dims) {
  return std::make_shared<DglaPresentation>("abelian", lo, std::move(dims));
}

DglaPtr make_cdga_model() { return tensor_with_cdga("cdga_B", 1, {}); }

DglaPtr make_heisenberg_model() {
  // [x, y] = z on (x, y, z) = (0, 1, 2)
  std::vector<BracketTerm> br{{0, 1, 2, Scalar(1)}, {1, 0, 2, Scalar(-1)}};
  return tensor_with_cdga("heisenberg_B", 3, br);
}

DglaPtr make_sl2() {
  auto L = std::make_shared<DglaPresentation>("sl2", 0, std::vector<int>{3});
  std::vector<BracketTerm> t;
  sl2_brackets(t);
  for (const auto& b : t) L->add_bracket_antisym(b.a, b.b, b.k, b.c);
  return L;
}

DglaPtr make_sl2_exterior() {
  // degree 0: x (x in sl2); degree 1: x e1, x e2; degree 2: x e1e2
  auto L = std::make_shared<DglaPresentation>("sl2_exterior", 0, std::vector<int>{3, 6, 3});
  std::vector<BracketTerm> t;
  sl2_brackets(t);
  for (const auto& b : t) {
    L->add_bracket_antisym(b.a, b.b, b.k, b.c);
    for (int g = 0; g < 2; ++g) L->add_bracket_antisym(b.a, 3 + 3 * g + b.b, 3 + 3 * g + b.k, b.c);
    for (int g = 0; g < 2; ++g) L->add_bracket_antisym(3 + 3 * g + b.a, b.b, 3 + 3 * g + b.k, b.c);
    L->add_bracket_antisym(b.a, 9 + b.b, 9 + b.k, b.c);
    L->add_bracket_antisym(9 + b.a, b.b, 9 + b.k, b.c);
    // (x e1, y e2) -> [x,y] e1e2, and (x e2, y e1) -> -[x,y] e1e2
    L->add_bracket_antisym(3 + b.a, 6 + b.b, 9 + b.k, b.c);
    L->add_bracket_antisym(6 + b.a, 3 + b.b, 9 + b.k, -b.c);
  }
  return L;
}

DglaPtr make_sl2_interval() {
  // degree 0: x, x s; degree 1: x ds
  auto L = std::make_shared<DglaPresentation>("sl2_interval", 0, std::vector<int>{6, 3});
  std::vector<BracketTerm> t;
  sl2_brackets(t);
  for (const auto& b : t) {
    L->add_bracket_antisym(b.a, b.b, b.k, b.c);
    L->add_bracket_antisym(b.a, 3 + b.b, 3 + b.k, b.c);
    L->add_bracket_antisym(3 + b.a, b.b, 3 + b.k, b.c);
    L->add_bracket_antisym(b.a, 6 + b.b, 6 + b.k, b.c);
    L->add_bracket_antisym(6 + b.a, b.b, 6 + b.k, b.c);
  }
  for (int i = 0; i < 3; ++i) L->add_differential(3 + i, 6 + i, Scalar(1));
  return L;
}

DglaPtr make_broken_d_squared() {
  auto L = std::make_shared<DglaPresentation>("broken_d", 0, std::vector<int>{1, 1, 1});
  L->add_differential(0, 1, Scalar(1));
  L->add_differential(1, 2, Scalar(1));
  return L;
}

DglaPtr make_broken_jacobi() {
  auto L = std::make_shared<DglaPresentation>("broken_jacobi", 0, std::vector<int>{3});
  L->add_bracket_antisym(0, 1, 0, Scalar(1));
  L->add_bracket_antisym(1, 2, 1, Scalar(1));
  return L;
}

Rational Rng::rational(int range, int max_den) {
  long p = uniform(-range, range);
  long q = uniform(1, max_den);
  return frac(p, q);
}

Scalar Rng::scalar(int range, int max_den, bool complex) {
  if (!complex) return Scalar(rational(range, max_den));
  return Scalar(rational(range, max_den), rational(range, max_den));
}

Series Rng::series(int trunc, int lo, int zero_pct) {
  Series s(trunc);
  for (int k = std::max(lo, -max_pole_order()); k <= trunc; ++k)
    if (uniform(0, 99) >= zero_pct) s.set_coeff(k, scalar());
  return s;
}

GradedElement random_element(Rng& rng, const DglaPtr& L, int p, int trunc, int lo,
                             int sparsity) {
  GradedElement x(L, trunc);
  for (int i = L->offset(p); i < L->offset(p) + L->dim(p); ++i)
    if (rng.uniform(0, sparsity) != 0) x[i] = rng.series(trunc, lo);
  return x;
}

Matrix random_invertible_matrix(Rng& rng, int n) {
  for (;;) {
    Matrix p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = Scalar(rng.uniform(-2, 2));
    if (rank(p) == n) return p;
  }
}

AlgebraPresentation random_associative_algebra(Rng& rng, int dim) {
  std::vector<AlgebraPresentation> bases;
  bases.push_back(product_algebra(dim));
  bases.push_back(truncated_polynomial_algebra(dim));
  if (dim == 3) bases.push_back(upper_triangular_algebra());
  if (dim == 4) bases.push_back(matrix_algebra(2));
  const AlgebraPresentation& base = bases[rng.uniform(0, int(bases.size()) - 1)];
  return change_basis(base, random_invertible_matrix(rng, dim));
}

AlgebraPresentation random_algebra_table(Rng& rng, int dim) {
  AlgebraPresentation a(dim, "random");
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      for (int k = 0; k < dim; ++k)
        if (rng.coin(1, 3)) a.add(x, y, k, Scalar(rng.uniform(-2, 2)));
  return a;
}

HochschildCochain random_cochain(Rng& rng, int dim, int arity, int trunc, int lo,
                                 int density_pct) {
  HochschildCochain c(dim, arity, trunc);
  for (auto& s : c.flat())
    if (rng.uniform(0, 99) < density_pct) s = rng.series(trunc, lo);
  return c;
}

}  // namespace defq
