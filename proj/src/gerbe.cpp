#include "defq/gerbe.hpp"

#include <algorithm>
#include <set>

namespace defq {

namespace {

// objects and admissible tuples of a datum
struct Shape {
  int objects = 0;
  std::vector<std::vector<int>> pairs, triples, quads;
};

Shape stack_shape(const Nerve& N) {
  return Shape{N.num_indices(), stack_tuples(N, 2), stack_tuples(N, 3), stack_tuples(N, 4)};
}

Shape chain_shape(const Nerve& N) { return Shape{N.size(), N.chains(1), N.chains(2), N.chains(3)}; }

Pair key2(int a, int b) { return {a, b}; }
Triple key3(int a, int b, int c) { return {a, b, c}; }

const Matrix& get_g(const std::map<Pair, Matrix>& G, int a, int b) {
  auto it = G.find(key2(a, b));
  if (it == G.end())
    throw UsageError("missing isomorphism for (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  return it->second;
}

const Element& get_c(const std::map<Triple, Element>& c, int a, int b, int d) {
  auto it = c.find(key3(a, b, d));
  if (it == c.end())
    throw UsageError("missing unit for (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                     std::to_string(d) + ")");
  return it->second;
}

Element inv_or_throw(const AlgebraPresentation& a, const Element& x) {
  std::optional<Element> y = inverse_element(a, x);
  if (!y) throw DomainError("element is not invertible");
  return *y;
}

Element mul(const AlgebraPresentation& a, const Element& x, const Element& y) {
  return a.multiply(x, y);
}

void require_sizes(const Shape& sh, const std::vector<AlgebraPresentation>& alg,
                   const std::map<Pair, Matrix>& G, const std::map<Triple, Element>& c) {
  if (int(alg.size()) != sh.objects) throw UsageError("one algebra per object expected");
  for (const auto& p : sh.pairs) {
    const Matrix& g = get_g(G, p[0], p[1]);
    if (g.rows() != alg[p[0]].dim() || g.cols() != alg[p[1]].dim())
      throw UsageError("isomorphism has the wrong shape");
  }
  for (const auto& t : sh.triples)
    if (int(get_c(c, t[0], t[1], t[2]).size()) != alg[t[0]].dim())
      throw UsageError("unit has the wrong length");
}

StackReport validate_core(const Shape& sh, const std::vector<AlgebraPresentation>& alg,
                          const std::map<Pair, Matrix>& G, const std::map<Triple, Element>& c) {
  require_sizes(sh, alg, G, c);
  StackReport rep;
  auto record = [&](const char* name, const std::vector<int>* witness, bool ok = true) {
    StackCheck ch{name, ok && witness == nullptr, witness ? *witness : std::vector<int>{}};
    rep.ok = rep.ok && ch.ok;
    rep.checks.push_back(std::move(ch));
  };

  const std::vector<int>* bad = nullptr;
  for (const auto& p : sh.pairs)
    if (p[0] == p[1] && !(get_g(G, p[0], p[1]) == Matrix::identity(alg[p[0]].dim()))) {
      bad = &p;
      break;
    }
  if (!bad)
    for (const auto& t : sh.triples)
      if ((t[0] == t[1] || t[1] == t[2]) && get_c(c, t[0], t[1], t[2]) != unit_of(alg[t[0]])) {
        bad = &t;
        break;
      }
  record("normalization", bad);

  bad = nullptr;
  for (const auto& p : sh.pairs)
    if (!is_algebra_isomorphism(alg[p[1]], alg[p[0]], get_g(G, p[0], p[1]))) {
      bad = &p;
      break;
    }
  record("isomorphisms", bad);

  bad = nullptr;
  for (const auto& t : sh.triples)
    if (!inverse_element(alg[t[0]], get_c(c, t[0], t[1], t[2]))) {
      bad = &t;
      break;
    }
  record("units", bad);
  bool units_ok = bad == nullptr;

  bad = nullptr;
  if (units_ok)
    for (const auto& t : sh.triples) {
      int i = t[0], j = t[1], k = t[2];
      Matrix lhs = get_g(G, i, j) * get_g(G, j, k);
      Matrix rhs = adjoint_matrix(alg[i], get_c(c, i, j, k)) * get_g(G, i, k);
      if (!(lhs == rhs)) {
        bad = &t;
        break;
      }
    }
  // not decidable without invertible units
  record("two-cocycle 1", bad, units_ok);

  bad = nullptr;
  for (const auto& q : sh.quads) {
    int i = q[0], j = q[1], k = q[2], l = q[3];
    const AlgebraPresentation& a = alg[i];
    Element lhs = mul(a, get_c(c, i, j, k), get_c(c, i, k, l));
    Element rhs = mul(a, get_g(G, i, j).apply(get_c(c, j, k, l)), get_c(c, i, j, l));
    if (lhs != rhs) {
      bad = &q;
      break;
    }
  }
  record("two-cocycle 2", bad);
  return rep;
}

// G''_ij = H_i Ad(b_ij) G_ij H_j^-1, c''_ijk = H_i(b_ij G_ij(b_jk) c_ijk b_ik^-1)
void apply_core(const Shape& sh, const std::vector<AlgebraPresentation>& alg,
                const std::map<Pair, Matrix>& G, const std::map<Triple, Element>& c,
                const StackIso& iso, std::map<Pair, Matrix>& G2, std::map<Triple, Element>& c2) {
  if (int(iso.H.size()) != sh.objects) throw UsageError("one H per object expected");
  std::vector<Matrix> Hinv;
  for (const auto& h : iso.H) Hinv.push_back(inverse(h));
  auto b = [&](int i, int j) -> const Element& {
    auto it = iso.b.find(key2(i, j));
    if (it == iso.b.end()) throw UsageError("missing b for a pair");
    return it->second;
  };
  for (const auto& p : sh.pairs) {
    int i = p[0], j = p[1];
    G2[key2(i, j)] = iso.H[i] * adjoint_matrix(alg[i], b(i, j)) * get_g(G, i, j) * Hinv[j];
  }
  for (const auto& t : sh.triples) {
    int i = t[0], j = t[1], k = t[2];
    const AlgebraPresentation& a = alg[i];
    Element x = mul(a, b(i, j), get_g(G, i, j).apply(b(j, k)));
    x = mul(a, x, get_c(c, i, j, k));
    x = mul(a, x, inv_or_throw(a, b(i, k)));
    c2[key3(i, j, k)] = iso.H[i].apply(x);
  }
}

bool same_core(const Shape& sh, const std::map<Pair, Matrix>& G1, const std::map<Triple, Element>& c1,
               const std::map<Pair, Matrix>& G2, const std::map<Triple, Element>& c2) {
  for (const auto& p : sh.pairs)
    if (!(get_g(G1, p[0], p[1]) == get_g(G2, p[0], p[1]))) return false;
  for (const auto& t : sh.triples)
    if (get_c(c1, t[0], t[1], t[2]) != get_c(c2, t[0], t[1], t[2])) return false;
  return true;
}

// u on the pairs (u_ii = 1), G = Ad(u) or identity, c = u_ij u_jk u_ik^-1
void fill_from_pairs(Rng& rng, const Shape& sh, const std::vector<AlgebraPresentation>& alg,
                     bool inner, std::map<Pair, Matrix>& G, std::map<Triple, Element>& c) {
  std::map<Pair, Element> u;
  for (const auto& p : sh.pairs)
    u[key2(p[0], p[1])] = p[0] == p[1] ? unit_of(alg[p[0]]) : random_unit(rng, alg[p[0]]);
  for (const auto& p : sh.pairs)
    G[key2(p[0], p[1])] = inner ? adjoint_matrix(alg[p[0]], u[key2(p[0], p[1])])
                                : Matrix::identity(alg[p[0]].dim());
  for (const auto& t : sh.triples) {
    const AlgebraPresentation& a = alg[t[0]];
    Element x = mul(a, u[key2(t[0], t[1])], u[key2(t[1], t[2])]);
    c[key3(t[0], t[1], t[2])] = mul(a, x, inv_or_throw(a, u[key2(t[0], t[2])]));
  }
}

void fill_trivial(const Shape& sh, const std::vector<AlgebraPresentation>& alg,
                  std::map<Pair, Matrix>& G, std::map<Triple, Element>& c) {
  for (const auto& p : sh.pairs) G[key2(p[0], p[1])] = Matrix::identity(alg[p[0]].dim());
  for (const auto& t : sh.triples) c[key3(t[0], t[1], t[2])] = unit_of(alg[t[0]]);
}

StackIso random_iso_core(Rng& rng, const Shape& sh, const std::vector<AlgebraPresentation>& alg) {
  StackIso iso;
  for (int i = 0; i < sh.objects; ++i) iso.H.push_back(adjoint_matrix(alg[i], random_unit(rng, alg[i])));
  for (const auto& p : sh.pairs)
    iso.b[key2(p[0], p[1])] = p[0] == p[1] ? unit_of(alg[p[0]]) : random_unit(rng, alg[p[0]]);
  return iso;
}

}  // namespace

const StackCheck* StackReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return &c;
  return nullptr;
}

std::vector<std::vector<int>> stack_tuples(const Nerve& nerve, int length) {
  std::vector<std::vector<int>> out;
  int n = nerve.num_indices();
  std::vector<int> t(length, 0);
  while (true) {
    Simplex s(t.begin(), t.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (nerve.contains(s)) out.push_back(t);
    int j = length - 1;
    while (j >= 0 && ++t[j] == n) t[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

Element unit_of(const AlgebraPresentation& a) {
  if (!a.unit()) throw UsageError("algebra " + a.name() + " has no recorded unit");
  return *a.unit();
}

std::optional<Element> inverse_element(const AlgebraPresentation& a, const Element& x) {
  int d = a.dim();
  if (int(x.size()) != d) throw UsageError("element has the wrong length");
  Matrix L(d, d);
  for (int b = 0; b < d; ++b) {
    Element e(d);
    e[b] = Scalar(1);
    Element xe = a.multiply(x, e);
    for (int r = 0; r < d; ++r) L(r, b) = xe[r];
  }
  Matrix Linv;
  try {
    Linv = inverse(L);
  } catch (const DomainError&) {
    return std::nullopt;
  }
  Element one = unit_of(a);
  Element y = Linv.apply(one);
  if (a.multiply(y, x) != one) return std::nullopt;
  return y;
}

Matrix adjoint_matrix(const AlgebraPresentation& a, const Element& x) {
  int d = a.dim();
  Element xinv = inv_or_throw(a, x);
  Matrix m(d, d);
  for (int b = 0; b < d; ++b) {
    Element e(d);
    e[b] = Scalar(1);
    Element v = a.multiply(a.multiply(x, e), xinv);
    for (int r = 0; r < d; ++r) m(r, b) = v[r];
  }
  return m;
}

bool is_algebra_isomorphism(const AlgebraPresentation& src, const AlgebraPresentation& dst,
                            const Matrix& g) {
  int d = src.dim();
  if (dst.dim() != d || g.rows() != d || g.cols() != d) return false;
  if (rank(g) != d) return false;
  std::vector<Element> img;
  for (int b = 0; b < d; ++b) {
    Element e(d);
    e[b] = Scalar(1);
    img.push_back(g.apply(e));
  }
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      Element xy(d);
      for (const auto& [k, c] : src.product(x, y)) xy[k] += c;
      if (g.apply(xy) != dst.multiply(img[x], img[y])) return false;
    }
  if (src.unit() && dst.unit() && g.apply(*src.unit()) != *dst.unit()) return false;
  return true;
}

StackDatum StackDatum::trivial(const Nerve& nerve, const AlgebraPresentation& base) {
  StackDatum S{nerve, std::vector<AlgebraPresentation>(nerve.num_indices(), base), {}, {}};
  fill_trivial(stack_shape(nerve), S.algebra, S.G, S.c);
  return S;
}

ChainDatum ChainDatum::trivial(const Nerve& nerve, const AlgebraPresentation& base) {
  ChainDatum C{nerve, std::vector<AlgebraPresentation>(nerve.size(), base), {}, {}};
  fill_trivial(chain_shape(nerve), C.algebra, C.G, C.c);
  return C;
}

StackReport validate_stack(const StackDatum& S) {
  return validate_core(stack_shape(S.nerve), S.algebra, S.G, S.c);
}

StackReport validate_chain_datum(const ChainDatum& C) {
  return validate_core(chain_shape(C.nerve), C.algebra, C.G, C.c);
}

bool stack_iso_verify(const StackIso& iso, const StackDatum& S1, const StackDatum& S2) {
  Shape sh = stack_shape(S1.nerve);
  if (S1.nerve.simplices() != S2.nerve.simplices()) throw UsageError("data on different nerves");
  if (int(iso.H.size()) != sh.objects) throw UsageError("one H per index expected");
  for (int i = 0; i < sh.objects; ++i)
    if (!is_algebra_isomorphism(S1.algebra[i], S2.algebra[i], iso.H[i])) return false;
  for (const auto& p : sh.pairs) {
    auto it = iso.b.find(key2(p[0], p[1]));
    if (it == iso.b.end()) throw UsageError("missing b for a pair");
    if (!inverse_element(S1.algebra[p[0]], it->second)) return false;
  }
  std::map<Pair, Matrix> G2;
  std::map<Triple, Element> c2;
  apply_core(sh, S1.algebra, S1.G, S1.c, iso, G2, c2);
  return same_core(sh, G2, c2, S2.G, S2.c);
}

StackDatum apply_stack_iso(const StackDatum& S, const StackIso& iso) {
  StackDatum out{S.nerve, S.algebra, {}, {}};
  apply_core(stack_shape(S.nerve), S.algebra, S.G, S.c, iso, out.G, out.c);
  return out;
}

ChainDatum apply_chain_iso(const ChainDatum& C, const StackIso& iso) {
  ChainDatum out{C.nerve, C.algebra, {}, {}};
  apply_core(chain_shape(C.nerve), C.algebra, C.G, C.c, iso, out.G, out.c);
  return out;
}

StackIso identity_iso(const StackDatum& S) {
  StackIso iso;
  for (const auto& a : S.algebra) iso.H.push_back(Matrix::identity(a.dim()));
  for (const auto& p : stack_tuples(S.nerve, 2)) iso.b[key2(p[0], p[1])] = unit_of(S.algebra[p[0]]);
  return iso;
}

int TwistedLayout::slot(int i, int j, int b) const {
  int n = int(indices.size());
  auto pi = std::find(indices.begin(), indices.end(), i);
  auto pj = std::find(indices.begin(), indices.end(), j);
  if (pi == indices.end() || pj == indices.end()) throw UsageError("index outside the simplex");
  return block_offset[(pi - indices.begin()) * n + (pj - indices.begin())] + b;
}

std::array<int, 3> TwistedLayout::decode(int basis) const {
  int n = int(indices.size());
  for (int blk = n * n - 1; blk >= 0; --blk)
    if (basis >= block_offset[blk]) return {indices[blk / n], indices[blk % n], basis - block_offset[blk]};
  throw UsageError("basis index out of range");
}

TwistedLayout twisted_layout(const StackDatum& S, int sigma) {
  TwistedLayout L;
  L.indices = S.nerve.simplex(sigma);
  int n = int(L.indices.size());
  for (int pi = 0; pi < n; ++pi)
    for (int pj = 0; pj < n; ++pj) {
      L.block_offset.push_back(L.dim);
      L.dim += S.algebra[L.indices[pi]].dim();
    }
  return L;
}

AlgebraPresentation twisted_matrix_build(const StackDatum& S, int sigma) {
  if (sigma < 0 || sigma >= S.nerve.size()) throw UsageError("simplex not in the nerve");
  TwistedLayout L = twisted_layout(S, sigma);
  AlgebraPresentation out(L.dim, "Matr_tw" + std::to_string(sigma));
  for (int i : L.indices)
    for (int j : L.indices)
      for (int k : L.indices) {
        const AlgebraPresentation& ai = S.algebra[i];
        const Matrix& g = get_g(S.G, i, j);
        const Element& c = get_c(S.c, i, j, k);
        for (int b = 0; b < ai.dim(); ++b)
          for (int b2 = 0; b2 < S.algebra[j].dim(); ++b2) {
            Element e(ai.dim()), f(S.algebra[j].dim());
            e[b] = Scalar(1);
            f[b2] = Scalar(1);
            Element v = ai.multiply(ai.multiply(e, g.apply(f)), c);
            for (int r = 0; r < ai.dim(); ++r)
              if (!v[r].is_zero()) out.add(L.slot(i, j, b), L.slot(j, k, b2), L.slot(i, k, r), v[r]);
          }
      }
  Element unit(L.dim);
  for (int i : L.indices) {
    Element u = unit_of(S.algebra[i]);
    for (int b = 0; b < S.algebra[i].dim(); ++b) unit[L.slot(i, i, b)] = u[b];
  }
  try {
    out.set_unit(unit);
  } catch (const DomainError&) {
    // unnormalized data: no unit recorded
  }
  return out;
}

ValidationReport local_cochain_check(const StackDatum& S, int sigma, const HochschildCochain& d) {
  TwistedLayout L = twisted_layout(S, sigma);
  if (d.dim() != L.dim) throw UsageError("cochain on another algebra");
  ValidationReport rep;
  int k = d.arity();
  for (size_t in = 0; in < d.num_inputs(); ++in) {
    std::vector<int> args = d.args_of(in);
    std::vector<std::array<int, 3>> slots;
    for (int x : args) slots.push_back(L.decode(x));
    bool chained = true;
    for (int p = 0; p + 1 < k; ++p) chained = chained && slots[p][1] == slots[p + 1][0];
    for (int o = 0; o < L.dim; ++o) {
      if (d.at(in, o).is_zero()) continue;
      std::array<int, 3> out = L.decode(o);
      bool ok = k == 0 ? out[0] == out[1]
                       : chained && out[0] == slots[0][0] && out[1] == slots[k - 1][1];
      if (!ok) {
        rep.ok = false;
        rep.axiom = k == 0 ? "diagonal" : (chained ? "slot" : "chain");
        rep.witness = args;
        rep.witness.push_back(o);
        return rep;
      }
    }
  }
  return rep;
}

HochschildCochain random_local_cochain(Rng& rng, const StackDatum& S, int sigma, int arity,
                                       int density_pct) {
  TwistedLayout L = twisted_layout(S, sigma);
  HochschildCochain d(L.dim, arity, 0);
  for (size_t in = 0; in < d.num_inputs(); ++in) {
    std::vector<int> args = d.args_of(in);
    int first = -1, last = -1;
    bool chained = true;
    if (arity == 0) {
      for (int i : L.indices)
        for (int b = 0; b < S.algebra[i].dim(); ++b)
          if (rng.uniform(0, 99) < density_pct) d.at(in, L.slot(i, i, b)) = Series(0, rng.scalar());
      continue;
    }
    for (int p = 0; p < arity; ++p) {
      std::array<int, 3> s = L.decode(args[p]);
      if (p == 0) first = s[0];
      if (p > 0 && s[0] != last) chained = false;
      last = s[1];
    }
    if (!chained) continue;
    for (int b = 0; b < S.algebra[first].dim(); ++b)
      if (rng.uniform(0, 99) < density_pct)
        d.at(in, L.slot(first, last, b)) = Series(0, rng.scalar());
  }
  return d;
}

DrsSetting twisted_drs_setting(const StackDatum& S) {
  DrsSetting D;
  D.nerve = S.nerve;
  std::vector<TwistedLayout> layouts;
  for (int s = 0; s < S.nerve.size(); ++s) {
    D.algebra.push_back(twisted_matrix_build(S, s));
    layouts.push_back(twisted_layout(S, s));
    D.curvature.emplace_back(int(S.nerve.simplex(s).size()) - 1, layouts.back().dim);
  }
  for (int t = 0; t < S.nerve.size(); ++t)
    for (int s = 0; s < S.nerve.size(); ++s) {
      if (s == t || !is_subset(S.nerve.simplex(s), S.nerve.simplex(t))) continue;
      const TwistedLayout& small = layouts[s];
      const TwistedLayout& big = layouts[t];
      Matrix iota(big.dim, small.dim);
      for (int x = 0; x < small.dim; ++x) {
        std::array<int, 3> sl = small.decode(x);
        iota(big.slot(sl[0], sl[1], sl[2]), x) = Scalar(1);
      }
      D.projection[{s, t}] = iota.transpose();
      D.inclusion[{s, t}] = std::move(iota);
    }
  return D;
}

ChainDatum chain_from_stack(const StackDatum& S) {
  Shape sh = chain_shape(S.nerve);
  ChainDatum C;
  C.nerve = S.nerve;
  auto first = [&](int s) { return S.nerve.simplex(s).front(); };
  for (int s = 0; s < S.nerve.size(); ++s) C.algebra.push_back(S.algebra[first(s)]);
  for (const auto& p : sh.pairs) C.G[key2(p[0], p[1])] = get_g(S.G, first(p[0]), first(p[1]));
  for (const auto& t : sh.triples)
    C.c[key3(t[0], t[1], t[2])] = get_c(S.c, first(t[0]), first(t[1]), first(t[2]));
  return C;
}

namespace {

int simplex_of(const Nerve& N, std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  int id = N.index_of(v);
  if (id < 0) throw UsageError("tuple does not span a simplex");
  return id;
}

// G_(i),(ij) G_(j),(ij)^-1
Matrix reconstructed_g(const ChainDatum& C, int i, int j) {
  int vi = simplex_of(C.nerve, {i}), vj = simplex_of(C.nerve, {j}), e = simplex_of(C.nerve, {i, j});
  return get_g(C.G, vi, e) * inverse(get_g(C.G, vj, e));
}

}  // namespace

BarycentricResult barycentric_reconstruct(const ChainDatum& C) {
  BarycentricResult res;
  res.coherence = validate_chain_datum(C);
  if (!res.coherence.ok) return res;
  const Nerve& N = C.nerve;
  Shape sh = stack_shape(N);
  StackDatum S;
  S.nerve = N;
  for (int i = 0; i < N.num_indices(); ++i) S.algebra.push_back(C.algebra[simplex_of(N, {i})]);
  for (const auto& p : sh.pairs) S.G[key2(p[0], p[1])] = reconstructed_g(C, p[0], p[1]);
  for (const auto& t : sh.triples) {
    int i = t[0], j = t[1], k = t[2];
    int vi = simplex_of(N, {i}), vj = simplex_of(N, {j}), vk = simplex_of(N, {k});
    int ij = simplex_of(N, {i, j}), jk = simplex_of(N, {j, k}), ik = simplex_of(N, {i, k});
    int f = simplex_of(N, {i, j, k});
    const AlgebraPresentation& ai = C.algebra[vi];
    const AlgebraPresentation& aj = C.algebra[vj];
    const AlgebraPresentation& ak = C.algebra[vk];
    Matrix to_i_from_j = get_g(C.G, vi, f) * inverse(get_g(C.G, vj, f));
    Matrix to_i_from_k = get_g(C.G, vi, f) * inverse(get_g(C.G, vk, f));
    Element jpart = mul(aj, inv_or_throw(aj, get_c(C.c, vj, ij, f)), get_c(C.c, vj, jk, f));
    Element kpart = mul(ak, inv_or_throw(ak, get_c(C.c, vk, jk, f)), get_c(C.c, vk, ik, f));
    Element x = mul(ai, get_c(C.c, vi, ij, f), to_i_from_j.apply(jpart));
    x = mul(ai, x, to_i_from_k.apply(kpart));
    x = mul(ai, x, inv_or_throw(ai, get_c(C.c, vi, ik, f)));
    S.c[key3(i, j, k)] = x;
  }
  res.datum = std::move(S);
  return res;
}

StackIso barycentric_iso(const ChainDatum& C, const StackIso& chain_iso) {
  const Nerve& N = C.nerve;
  StackIso iso;
  for (int i = 0; i < N.num_indices(); ++i) iso.H.push_back(chain_iso.H.at(simplex_of(N, {i})));
  for (const auto& p : stack_tuples(N, 2)) {
    int i = p[0], j = p[1];
    int vi = simplex_of(N, {i}), vj = simplex_of(N, {j}), e = simplex_of(N, {i, j});
    const AlgebraPresentation& ai = C.algebra[vi];
    const AlgebraPresentation& aj = C.algebra[vj];
    // b_(j),(ij)^-1 is carried into A_i by the reconstructed G_ij
    Element bj = inv_or_throw(aj, chain_iso.b.at(key2(vj, e)));
    iso.b[key2(i, j)] = mul(ai, chain_iso.b.at(key2(vi, e)), reconstructed_g(C, i, j).apply(bj));
  }
  return iso;
}

Element random_unit(Rng& rng, const AlgebraPresentation& a) {
  Element one = unit_of(a);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Element x(a.dim());
    for (int b = 0; b < a.dim(); ++b)
      if (rng.coin()) x[b] = rng.scalar(2, 2);
    for (int b = 0; b < a.dim(); ++b) x[b] += one[b] * Scalar(rng.uniform(1, 2));
    if (inverse_element(a, x)) return x;
  }
  throw DomainError("no invertible element found");
}

StackDatum random_coboundary_gerbe(Rng& rng, const Nerve& nerve, const AlgebraPresentation& base) {
  if (!base.is_commutative()) throw UsageError("a gerbe needs a commutative base");
  StackDatum S{nerve, std::vector<AlgebraPresentation>(nerve.num_indices(), base), {}, {}};
  fill_from_pairs(rng, stack_shape(nerve), S.algebra, false, S.G, S.c);
  return S;
}

StackDatum random_inner_stack(Rng& rng, const Nerve& nerve, const AlgebraPresentation& base) {
  StackDatum S{nerve, std::vector<AlgebraPresentation>(nerve.num_indices(), base), {}, {}};
  fill_from_pairs(rng, stack_shape(nerve), S.algebra, true, S.G, S.c);
  return S;
}

ChainDatum random_coboundary_chain(Rng& rng, const Nerve& nerve, const AlgebraPresentation& base) {
  if (!base.is_commutative()) throw UsageError("abelian chain data need a commutative base");
  ChainDatum C{nerve, std::vector<AlgebraPresentation>(nerve.size(), base), {}, {}};
  fill_from_pairs(rng, chain_shape(nerve), C.algebra, false, C.G, C.c);
  return C;
}

ChainDatum random_inner_chain(Rng& rng, const Nerve& nerve, const AlgebraPresentation& base) {
  ChainDatum C{nerve, std::vector<AlgebraPresentation>(nerve.size(), base), {}, {}};
  fill_from_pairs(rng, chain_shape(nerve), C.algebra, true, C.G, C.c);
  return C;
}

StackIso random_stack_iso(Rng& rng, const StackDatum& S) {
  return random_iso_core(rng, stack_shape(S.nerve), S.algebra);
}

StackIso random_chain_iso(Rng& rng, const ChainDatum& C) {
  return random_iso_core(rng, chain_shape(C.nerve), C.algebra);
}

}  // namespace defq
