#include "defq/hochschild.hpp"

#include <map>
#include <tuple>

namespace defq {

namespace {

int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

size_t ipow(int b, int e) {
  size_t r = 1;
  for (int i = 0; i < e; ++i) r *= size_t(b);
  return r;
}

}  // namespace

AlgebraPresentation::AlgebraPresentation(int dim, std::string name)
    : dim_(dim), name_(std::move(name)), mult_(size_t(dim) * dim) {
  if (dim <= 0) throw UsageError("algebra dimension must be positive");
}

void AlgebraPresentation::add(int a, int b, int k, const Scalar& c) {
  if (a < 0 || b < 0 || k < 0 || a >= dim_ || b >= dim_ || k >= dim_)
    throw UsageError("structure constant index out of range");
  if (c.is_zero()) return;
  auto& v = mult_[size_t(a) * dim_ + b];
  for (auto& [i, x] : v)
    if (i == k) {
      x += c;
      return;
    }
  v.push_back({k, c});
}

void AlgebraPresentation::set_unit(std::vector<Scalar> u) {
  if (static_cast<int>(u.size()) != dim_) throw UsageError("unit has the wrong length");
  for (int a = 0; a < dim_; ++a) {
    std::vector<Scalar> e(dim_);
    e[a] = Scalar(1);
    if (multiply(u, e) != e || multiply(e, u) != e) throw DomainError("unit is not a two-sided unit");
  }
  unit_ = std::move(u);
}

std::vector<Scalar> AlgebraPresentation::multiply(const std::vector<Scalar>& x,
                                                  const std::vector<Scalar>& y) const {
  std::vector<Scalar> out(dim_);
  for (int a = 0; a < dim_; ++a) {
    if (x[a].is_zero()) continue;
    for (int b = 0; b < dim_; ++b) {
      if (y[b].is_zero()) continue;
      Scalar xy = x[a] * y[b];
      for (const auto& [k, c] : product(a, b)) out[k] += xy * c;
    }
  }
  return out;
}

std::vector<int> AlgebraPresentation::associativity_witness() const {
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c) {
        std::vector<Scalar> l(dim_), r(dim_);
        for (const auto& [k, x] : product(a, b))
          for (const auto& [j, y] : product(k, c)) l[j] += x * y;
        for (const auto& [k, x] : product(b, c))
          for (const auto& [j, y] : product(a, k)) r[j] += x * y;
        if (l != r) return {a, b, c};
      }
  return {};
}

bool AlgebraPresentation::is_commutative() const {
  for (int a = 0; a < dim_; ++a)
    for (int b = a + 1; b < dim_; ++b) {
      std::vector<Scalar> l(dim_), r(dim_);
      for (const auto& [k, x] : product(a, b)) l[k] += x;
      for (const auto& [k, x] : product(b, a)) r[k] += x;
      if (l != r) return false;
    }
  return true;
}

std::vector<std::vector<Scalar>> AlgebraPresentation::center_basis() const {
  // z central iff z e_b = e_b z for every basis vector
  Matrix m(dim_ * dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) {
      for (const auto& [k, x] : product(a, b)) m(b * dim_ + k, a) += x;
      for (const auto& [k, x] : product(b, a)) m(b * dim_ + k, a) -= x;
    }
  return kernel_basis(m);
}

AlgebraPresentation truncated_polynomial_algebra(int k) {
  AlgebraPresentation a(k, "k[x]/(x^" + std::to_string(k) + ")");
  for (int i = 0; i < k; ++i)
    for (int j = 0; i + j < k; ++j) a.add(i, j, i + j, Scalar(1));
  std::vector<Scalar> u(k);
  u[0] = Scalar(1);
  a.set_unit(u);
  return a;
}

AlgebraPresentation matrix_algebra(int n) {
  AlgebraPresentation a(n * n, "M" + std::to_string(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) a.add(i * n + j, j * n + k, i * n + k, Scalar(1));
  std::vector<Scalar> u(n * n);
  for (int i = 0; i < n; ++i) u[i * n + i] = Scalar(1);
  a.set_unit(u);
  return a;
}

AlgebraPresentation upper_triangular_algebra() {
  // E11 = 0, E12 = 1, E22 = 2
  AlgebraPresentation a(3, "upper_triangular");
  a.add(0, 0, 0, Scalar(1));
  a.add(0, 1, 1, Scalar(1));
  a.add(1, 2, 1, Scalar(1));
  a.add(2, 2, 2, Scalar(1));
  a.set_unit({Scalar(1), Scalar(0), Scalar(1)});
  return a;
}

AlgebraPresentation product_algebra(int copies) {
  AlgebraPresentation a(copies, "k^" + std::to_string(copies));
  for (int i = 0; i < copies; ++i) a.add(i, i, i, Scalar(1));
  a.set_unit(std::vector<Scalar>(copies, Scalar(1)));
  return a;
}

AlgebraPresentation change_basis(const AlgebraPresentation& a, const Matrix& p) {
  int d = a.dim();
  if (p.rows() != d || p.cols() != d) throw UsageError("basis change has the wrong shape");
  Matrix pinv = inverse(p);
  AlgebraPresentation out(d, a.name() + "'");
  auto col = [&](int j) {
    std::vector<Scalar> v(d);
    for (int i = 0; i < d; ++i) v[i] = p(i, j);
    return v;
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<Scalar> prod = pinv.apply(a.multiply(col(i), col(j)));
      for (int k = 0; k < d; ++k) out.add(i, j, k, prod[k]);
    }
  if (a.unit()) out.set_unit(pinv.apply(*a.unit()));
  return out;
}

HochschildCochain::HochschildCochain(int dim, int arity, int trunc)
    : dim_(dim), arity_(arity), trunc_(trunc), inputs_(ipow(dim, arity)) {
  if (dim <= 0 || arity < 0) throw UsageError("bad cochain shape");
  v_.assign(inputs_ * dim_, Series(trunc));
}

std::vector<int> HochschildCochain::args_of(size_t input) const {
  std::vector<int> a(arity_);
  for (int j = arity_ - 1; j >= 0; --j) {
    a[j] = int(input % dim_);
    input /= dim_;
  }
  return a;
}

size_t HochschildCochain::index_of(const std::vector<int>& args) const {
  if (static_cast<int>(args.size()) != arity_) throw UsageError("wrong number of arguments");
  size_t idx = 0;
  for (int a : args) {
    if (a < 0 || a >= dim_) throw UsageError("argument index out of range");
    idx = idx * dim_ + a;
  }
  return idx;
}

bool HochschildCochain::is_zero() const {
  for (const auto& s : v_)
    if (!s.is_zero()) return false;
  return true;
}

bool HochschildCochain::input_is_zero(size_t input) const {
  for (int b = 0; b < dim_; ++b)
    if (!at(input, b).is_zero()) return false;
  return true;
}

bool HochschildCochain::is_normalized(int unit_index) const {
  for (size_t i = 0; i < inputs_; ++i) {
    std::vector<int> a = args_of(i);
    bool hit = false;
    for (int x : a) hit = hit || x == unit_index;
    if (hit && !input_is_zero(i)) return false;
  }
  return true;
}

void HochschildCochain::require_shape(const HochschildCochain& o) const {
  if (dim_ != o.dim_ || arity_ != o.arity_) throw UsageError("cochain shape mismatch");
  if (trunc_ != o.trunc_) throw UsageError("mixed truncation orders");
}

HochschildCochain& HochschildCochain::operator+=(const HochschildCochain& o) {
  require_shape(o);
  for (size_t i = 0; i < v_.size(); ++i)
    if (!o.v_[i].is_zero()) v_[i] += o.v_[i];
  return *this;
}

HochschildCochain& HochschildCochain::operator-=(const HochschildCochain& o) {
  require_shape(o);
  for (size_t i = 0; i < v_.size(); ++i)
    if (!o.v_[i].is_zero()) v_[i] -= o.v_[i];
  return *this;
}

HochschildCochain& HochschildCochain::operator*=(const Scalar& s) {
  for (auto& x : v_)
    if (!x.is_zero()) x *= s;
  return *this;
}

HochschildCochain& HochschildCochain::operator*=(const Series& s) {
  for (auto& x : v_)
    if (!x.is_zero()) x = x * s;
  return *this;
}

bool operator==(const HochschildCochain& a, const HochschildCochain& b) {
  return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.trunc_ == b.trunc_ && a.v_ == b.v_;
}

HochschildCochain multiplication_cochain(const AlgebraPresentation& a, int trunc) {
  HochschildCochain m(a.dim(), 2, trunc);
  for (int x = 0; x < a.dim(); ++x)
    for (int y = 0; y < a.dim(); ++y)
      for (const auto& [k, c] : a.product(x, y)) m.at(std::vector<int>{x, y}, k) = Series(trunc, c);
  return m;
}

HochschildCochain identity_cochain(int dim, int trunc) {
  HochschildCochain id(dim, 1, trunc);
  for (int x = 0; x < dim; ++x) id.at(std::vector<int>{x}, x) = Series(trunc, Scalar(1));
  return id;
}

HochschildCochain element_cochain(const std::vector<Series>& value) {
  if (value.empty()) throw UsageError("empty element");
  HochschildCochain c(int(value.size()), 0, value[0].trunc());
  for (size_t b = 0; b < value.size(); ++b) c.at(0, int(b)) = value[b];
  return c;
}

HochschildCochain brace(const HochschildCochain& d, const HochschildCochain& e) {
  if (d.dim() != e.dim()) throw UsageError("cochains on different algebras");
  if (d.trunc() != e.trunc()) throw UsageError("mixed truncation orders");
  int k = d.arity(), l = e.arity(), dim = d.dim();
  if (k == 0) return HochschildCochain(dim, std::max(l - 1, 0), d.trunc());
  HochschildCochain out(dim, k + l - 1, d.trunc());
  std::vector<size_t> e_nz;
  for (size_t j = 0; j < e.num_inputs(); ++j)
    if (!e.input_is_zero(j)) e_nz.push_back(j);
  for (size_t i = 0; i < d.num_inputs(); ++i) {
    if (d.input_is_zero(i)) continue;
    std::vector<int> alpha = d.args_of(i);
    for (int pos = 0; pos < k; ++pos) {
      int sign = parity_sign(long(pos) * (l - 1));
      int slot = alpha[pos];
      for (size_t j : e_nz) {
        const Series& w = e.at(j, slot);
        if (w.is_zero()) continue;
        std::vector<int> beta = e.args_of(j);
        std::vector<int> args(alpha.begin(), alpha.begin() + pos);
        args.insert(args.end(), beta.begin(), beta.end());
        args.insert(args.end(), alpha.begin() + pos + 1, alpha.end());
        size_t o = out.index_of(args);
        Series ws = w * Scalar(sign);
        for (int b = 0; b < dim; ++b) {
          const Series& v = d.at(i, b);
          if (!v.is_zero()) out.at(o, b) += ws * v;
        }
      }
    }
  }
  return out;
}

HochschildCochain gerstenhaber(const HochschildCochain& d, const HochschildCochain& e) {
  HochschildCochain de = brace(d, e);
  HochschildCochain ed = brace(e, d);
  if (de.arity() != ed.arity()) return de;  // only when both are zero-cochains
  int s = parity_sign(long(d.degree()) * e.degree());
  ed *= Scalar(s);
  return de -= ed;
}

HochschildCochain hochschild_delta(const AlgebraPresentation& a, const HochschildCochain& d) {
  return gerstenhaber(multiplication_cochain(a, d.trunc()), d);
}

HochschildCochain hochschild_delta_classical(const AlgebraPresentation& a,
                                             const HochschildCochain& d) {
  HochschildCochain r = hochschild_delta(a, d);
  return r *= Scalar(parity_sign(d.degree()));
}

HochschildCochain contract_i_R(const HochschildCochain& r, const HochschildCochain& d) {
  if (r.arity() != 0) throw UsageError("contraction needs a zero-cochain");
  return brace(d, r);
}

HochschildCochain hochschild_mc_defect(const AlgebraPresentation& a,
                                       const HochschildCochain& lambda) {
  if (lambda.arity() != 2) throw UsageError("Maurer-Cartan elements are 2-cochains");
  HochschildCochain r = hochschild_delta(a, lambda);
  HochschildCochain q = gerstenhaber(lambda, lambda);
  q *= Scalar(frac(1, 2));
  return r += q;
}

bool deformed_table_is_associative(const AlgebraPresentation& a,
                                   const HochschildCochain& lambda) {
  int d = a.dim(), n = lambda.trunc();
  HochschildCochain mu = multiplication_cochain(a, n) + lambda;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int out = 0; out < d; ++out) {
          Series l(n), r(n);
          for (int k = 0; k < d; ++k) {
            const Series& xy = mu.at({x, y}, k);
            if (!xy.is_zero()) l += xy * mu.at({k, z}, out);
            const Series& yz = mu.at({y, z}, k);
            if (!yz.is_zero()) r += yz * mu.at({x, k}, out);
          }
          if (l != r) return false;
        }
  return true;
}

namespace {

std::vector<int> unpack(size_t idx, int arity, int dim) {
  std::vector<int> a(arity);
  for (int j = arity - 1; j >= 0; --j) {
    a[j] = int(idx % dim);
    idx /= dim;
  }
  return a;
}

size_t pack(const std::vector<int>& a, int dim) {
  size_t idx = 0;
  for (int x : a) idx = idx * dim + x;
  return idx;
}

// basis cochain E_{args,out}: arity, packed input, output basis vector
struct CochainKey {
  int arity;
  size_t input;
  int out;
  bool operator<(const CochainKey& o) const {
    return std::tie(arity, input, out) < std::tie(o.arity, o.input, o.out);
  }
};

using SparseCochain = std::map<CochainKey, Scalar>;

// [E_{alpha,b}, E_{beta,c}] = D o E - (-1)^{|D||E|} E o D, exact
void basis_bracket(int dim, const CochainKey& x, const CochainKey& y, const Scalar& coef,
                   SparseCochain& out) {
  int k = x.arity, l = y.arity;
  if (k + l - 1 < 0) return;
  std::vector<int> alpha = unpack(x.input, k, dim), beta = unpack(y.input, l, dim);
  auto emit = [&](const std::vector<int>& in, int o, const Scalar& s) {
    Scalar& slot = out[CochainKey{k + l - 1, pack(in, dim), o}];
    slot += s;
  };
  for (int pos = 0; pos < k; ++pos) {
    if (alpha[pos] != y.out) continue;
    std::vector<int> in(alpha.begin(), alpha.begin() + pos);
    in.insert(in.end(), beta.begin(), beta.end());
    in.insert(in.end(), alpha.begin() + pos + 1, alpha.end());
    emit(in, x.out, coef * Scalar(parity_sign(long(pos) * (l - 1))));
  }
  int s = -parity_sign(long(k - 1) * (l - 1));
  for (int pos = 0; pos < l; ++pos) {
    if (beta[pos] != x.out) continue;
    std::vector<int> in(beta.begin(), beta.begin() + pos);
    in.insert(in.end(), alpha.begin(), alpha.end());
    in.insert(in.end(), beta.begin() + pos + 1, beta.end());
    emit(in, y.out, coef * Scalar(s * parity_sign(long(pos) * (k - 1))));
  }
}

void prune(SparseCochain& v) {
  for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
}

SparseCochain sparse_bracket(int dim, const SparseCochain& x, const SparseCochain& y) {
  SparseCochain out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) basis_bracket(dim, kx, ky, cx * cy, out);
  prune(out);
  return out;
}

SparseCochain mult_sparse(const AlgebraPresentation& a) {
  SparseCochain m;
  int d = a.dim();
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v)
      for (const auto& [w, c] : a.product(u, v)) m[CochainKey{2, size_t(u * d + v), w}] += c;
  prune(m);
  return m;
}

void axpy(SparseCochain& acc, const SparseCochain& v, const Scalar& s) {
  for (const auto& [k, c] : v) acc[k] += c * s;
}

}  // namespace

DglaPtr hochschild_dgla(const AlgebraPresentation& a, int max_degree, int min_degree) {
  int d = a.dim();
  if (min_degree < -1 || max_degree < min_degree) throw UsageError("bad degree window");
  std::vector<int> dims;
  for (int p = min_degree; p <= max_degree; ++p) dims.push_back(int(ipow(d, p + 1)) * d);
  auto L = std::make_shared<DglaPresentation>("hochschild(" + a.name() + ")", min_degree, dims);
  auto key_of = [&](int g) {
    int p = L->degree_of(g);
    int local = g - L->offset(p);
    return CochainKey{p + 1, size_t(local / d), local % d};
  };
  auto index_of = [&](const CochainKey& k) {
    return L->offset(k.arity - 1) + int(k.input * d + k.out);
  };
  SparseCochain m = mult_sparse(a);
  for (int x = 0; x < L->total_dim(); ++x) {
    int px = L->degree_of(x);
    CochainKey kx = key_of(x);
    for (int y = 0; y < L->total_dim(); ++y) {
      int py = L->degree_of(y);
      if (px + py > max_degree) break;  // degrees are sorted
      if (px + py < min_degree) continue;
      SparseCochain terms;
      basis_bracket(d, kx, key_of(y), Scalar(1), terms);
      for (const auto& [k, c] : terms)
        if (!c.is_zero()) L->add_bracket(x, y, index_of(k), c);
    }
    if (px + 1 > max_degree) continue;
    SparseCochain dx = sparse_bracket(d, m, SparseCochain{{kx, Scalar(1)}});
    for (const auto& [k, c] : dx) L->add_differential(x, index_of(k), c);
  }
  return L;
}

ValidationReport validate_hochschild(const AlgebraPresentation& a, int max_degree) {
  int d = a.dim();
  ValidationReport rep;
  std::vector<CochainKey> basis;
  std::vector<int> window_index;
  int running = 0;
  for (int p = -1; p <= max_degree; ++p) {
    size_t n = ipow(d, p + 1);
    for (size_t in = 0; in < n; ++in)
      for (int o = 0; o < d; ++o) {
        basis.push_back(CochainKey{p + 1, in, o});
        window_index.push_back(running++);
      }
  }
  SparseCochain m = mult_sparse(a);
  std::map<CochainKey, SparseCochain> dmemo;
  auto dif = [&](const SparseCochain& x) {
    SparseCochain out;
    for (const auto& [k, c] : x) {
      auto it = dmemo.find(k);
      if (it == dmemo.end())
        it = dmemo.emplace(k, sparse_bracket(d, m, SparseCochain{{k, Scalar(1)}})).first;
      axpy(out, it->second, c);
    }
    prune(out);
    return out;
  };
  auto one = [](const CochainKey& k) { return SparseCochain{{k, Scalar(1)}}; };
  auto deg = [](const CochainKey& k) { return k.arity - 1; };
  auto fail = [&](const char* ax, std::vector<int> w, const char* detail) {
    rep.ok = false;
    rep.axiom = ax;
    rep.witness = std::move(w);
    rep.detail = detail;
    return rep;
  };
  size_t n = basis.size();
  for (size_t i = 0; i < n; ++i)
    if (!dif(dif(one(basis[i]))).empty()) return fail("d_squared", {int(i)}, "d(d(e)) != 0");
  // bracket of basis pairs, memoized on the in-window range
  std::map<std::pair<size_t, size_t>, SparseCochain> bmemo;
  auto br = [&](size_t i, size_t j) -> const SparseCochain& {
    auto key = std::make_pair(i, j);
    auto it = bmemo.find(key);
    if (it != bmemo.end()) return it->second;
    return bmemo.emplace(key, sparse_bracket(d, one(basis[i]), one(basis[j]))).first->second;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      int pi = deg(basis[i]), pj = deg(basis[j]);
      if (pi + pj > max_degree) continue;
      SparseCochain s = br(i, j);
      axpy(s, br(j, i), Scalar(parity_sign(long(pi) * pj)));
      prune(s);
      if (!s.empty()) return fail("antisymmetry", {int(i), int(j)}, "[a,b] + (-1)^{|a||b|}[b,a] != 0");
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int pi = deg(basis[i]), pj = deg(basis[j]);
      if (pi + pj > max_degree) continue;
      SparseCochain s = dif(br(i, j));
      axpy(s, sparse_bracket(d, dif(one(basis[i])), one(basis[j])), Scalar(-1));
      axpy(s, sparse_bracket(d, one(basis[i]), dif(one(basis[j]))), Scalar(-parity_sign(pi)));
      prune(s);
      if (!s.empty()) return fail("leibniz", {int(i), int(j)}, "d[a,b] != [da,b] + (-1)^{|a|}[a,db]");
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      for (size_t k = j; k < n; ++k) {
        int pi = deg(basis[i]), pj = deg(basis[j]), pk = deg(basis[k]);
        if (pi + pj + pk > max_degree) continue;
        const SparseCochain& jk = br(j, k);
        const SparseCochain& ij = br(i, j);
        const SparseCochain& ik = br(i, k);
        if (jk.empty() && ij.empty() && ik.empty()) continue;
        SparseCochain s = sparse_bracket(d, one(basis[i]), jk);
        axpy(s, sparse_bracket(d, ij, one(basis[k])), Scalar(-1));
        axpy(s, sparse_bracket(d, one(basis[j]), ik), Scalar(-parity_sign(long(pi) * pj)));
        prune(s);
        if (!s.empty()) return fail("jacobi", {int(i), int(j), int(k)}, "graded Jacobi identity fails");
      }
  return rep;
}

GradedElement cochain_to_element(const DglaPtr& L, const HochschildCochain& c) {
  GradedElement x(L, c.trunc());
  int p = c.degree();
  if (L->dim(p) != static_cast<int>(c.flat().size()))
    throw UsageError("cochain does not fit the materialized DGLA");
  for (size_t i = 0; i < c.flat().size(); ++i) x[L->offset(p) + int(i)] = c.flat()[i];
  return x;
}

HochschildCochain element_to_cochain(const GradedElement& x, int dim, int degree) {
  HochschildCochain c(dim, degree + 1, x.trunc());
  const DglaPresentation& L = x.dgla();
  if (L.dim(degree) != static_cast<int>(c.flat().size()))
    throw UsageError("degree does not match the cochain layout");
  for (size_t i = 0; i < c.flat().size(); ++i) c.flat()[i] = x[L.offset(degree) + int(i)];
  return c;
}

}  // namespace defq
