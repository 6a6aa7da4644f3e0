#include "defq/dgla.hpp"

#include <mutex>
#include <sstream>

namespace defq {

namespace {

long long pair_key(int a, int b) { return (static_cast<long long>(a) << 32) | unsigned(b); }

int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

void accumulate(SparseVec& acc, int k, const Scalar& c) {
  if (c.is_zero()) return;
  for (auto& [i, x] : acc)
    if (i == k) {
      x += c;
      return;
    }
  acc.push_back({k, c});
}

bool sparse_is_zero(const SparseVec& v) {
  for (const auto& [i, x] : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

DglaPresentation::DglaPresentation(std::string name, int lo, std::vector<int> dims)
    : name_(std::move(name)), lo_(lo), dims_(std::move(dims)) {
  if (dims_.empty()) throw UsageError("a DGLA presentation needs at least one degree");
  for (int p = 0; p < static_cast<int>(dims_.size()); ++p) {
    if (dims_[p] < 0) throw UsageError("negative dimension");
    offsets_.push_back(total_);
    for (int i = 0; i < dims_[p]; ++i) degree_of_.push_back(lo_ + p);
    total_ += dims_[p];
  }
  d_.resize(total_);
  partners_.resize(total_);
}

int DglaPresentation::dim(int p) const {
  if (p < lo_ || p > hi()) return 0;
  return dims_[p - lo_];
}

int DglaPresentation::offset(int p) const {
  if (p < lo_) return 0;
  if (p > hi()) return total_;
  return offsets_[p - lo_];
}

void DglaPresentation::check_index(int idx) const {
  if (idx < 0 || idx >= total_) throw UsageError("basis index out of range");
}

void DglaPresentation::set_differential(int p, const Matrix& m) {
  if (m.cols() != dim(p) || m.rows() != dim(p + 1))
    throw UsageError("differential block has the wrong shape");
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) add_differential(offset(p) + j, offset(p + 1) + i, m(i, j));
}

void DglaPresentation::add_differential(int src, int dst, const Scalar& c) {
  check_index(src);
  check_index(dst);
  if (degree_of_[dst] != degree_of_[src] + 1)
    throw UsageError("differential must raise degree by one");
  accumulate(d_[src], dst, c);
}

void DglaPresentation::add_bracket(int a, int b, int k, const Scalar& c) {
  check_index(a);
  check_index(b);
  check_index(k);
  if (degree_of_[k] != degree_of_[a] + degree_of_[b])
    throw UsageError("bracket term does not respect degrees");
  if (c.is_zero()) return;
  auto [it, fresh] = br_.try_emplace(pair_key(a, b));
  if (fresh) partners_[a].push_back(b);
  accumulate(it->second, k, c);
}

void DglaPresentation::add_bracket_antisym(int a, int b, int k, const Scalar& c) {
  add_bracket(a, b, k, c);
  if (a == b) return;  // odd self-bracket is symmetric, recorded once
  add_bracket(b, a, k, -Scalar(sign_pow(long(degree_of_[a]) * degree_of_[b])) * c);
}

const SparseVec& DglaPresentation::bracket_of(int a, int b) const {
  static const SparseVec empty;
  auto it = br_.find(pair_key(a, b));
  return it == br_.end() ? empty : it->second;
}

std::vector<BracketTerm> DglaPresentation::bracket_terms() const {
  std::vector<BracketTerm> out;
  for (int a = 0; a < total_; ++a)
    for (int b : partners_[a])
      for (const auto& [k, c] : bracket_of(a, b))
        if (!c.is_zero()) out.push_back({a, b, k, c});
  return out;
}

Matrix DglaPresentation::differential_block(int p) const {
  Matrix m(dim(p + 1), dim(p));
  for (int j = 0; j < dim(p); ++j)
    for (const auto& [i, c] : d_[offset(p) + j]) m(i - offset(p + 1), j) += c;
  return m;
}

GradedElement::GradedElement(DglaPtr dgla, int trunc)
    : dgla_(std::move(dgla)), trunc_(trunc) {
  if (!dgla_) throw UsageError("element needs a DGLA");
  c_.assign(dgla_->total_dim(), Series(trunc));
}

GradedElement GradedElement::basis(DglaPtr dgla, int trunc, int idx, const Series& coeff) {
  GradedElement e(std::move(dgla), trunc);
  if (idx < 0 || idx >= e.dgla().total_dim()) throw UsageError("basis index out of range");
  require_same_trunc(coeff, e.c_[idx]);
  e.c_[idx] = coeff;
  return e;
}

bool GradedElement::is_zero() const {
  for (const auto& s : c_)
    if (!s.is_zero()) return false;
  return true;
}

bool GradedElement::is_homogeneous(int p) const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero() && dgla_->degree_of(int(i)) != p) return false;
  return true;
}

bool GradedElement::in_maximal_ideal() const {
  for (const auto& s : c_)
    if (!s.in_maximal_ideal()) return false;
  return true;
}

int GradedElement::valuation() const {
  int v = trunc_ + 1;
  for (const auto& s : c_) v = std::min(v, s.valuation());
  return v;
}

GradedElement GradedElement::degree_part(int p) const {
  GradedElement e(dgla_, trunc_);
  for (int i = dgla_->offset(p); i < dgla_->offset(p) + dgla_->dim(p); ++i) e.c_[i] = c_[i];
  return e;
}

void GradedElement::require_compatible(const GradedElement& o) const {
  if (dgla_.get() != o.dgla_.get())
    throw UsageError("elements belong to different DGLAs");
  if (trunc_ != o.trunc_) throw UsageError("mixed truncation orders");
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
  require_compatible(o);
  for (size_t i = 0; i < c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
  require_compatible(o);
  for (size_t i = 0; i < c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] -= o.c_[i];
  return *this;
}

GradedElement& GradedElement::operator*=(const Scalar& s) {
  for (auto& x : c_)
    if (!x.is_zero()) x *= s;
  return *this;
}

GradedElement& GradedElement::operator*=(const Series& s) {
  for (auto& x : c_)
    if (!x.is_zero()) x = x * s;
  return *this;
}

GradedElement GradedElement::operator-() const {
  GradedElement e = *this;
  for (auto& x : e.c_) x = -x;
  return e;
}

bool operator==(const GradedElement& a, const GradedElement& b) {
  if (a.trunc_ != b.trunc_ || a.c_.size() != b.c_.size()) return false;
  for (size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::string GradedElement::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    os << (any ? "; " : "") << "e" << i << "[" << dgla_->degree_of(int(i))
       << "]: " << c_[i].to_string();
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

GradedElement bracket(const GradedElement& x, const GradedElement& y) {
  if (x.dgla_ptr().get() != y.dgla_ptr().get()) throw UsageError("bracket across DGLAs");
  require_same_trunc(Series(x.trunc()), Series(y.trunc()));
  const DglaPresentation& L = x.dgla();
  GradedElement out(x.dgla_ptr(), x.trunc());
  std::vector<char> ynz(L.total_dim());
  for (int b = 0; b < L.total_dim(); ++b) ynz[b] = !y[b].is_zero();
  for (int a = 0; a < L.total_dim(); ++a) {
    if (x[a].is_zero()) continue;
    for (int b : L.partners(a)) {
      if (!ynz[b]) continue;
      Series prod = x[a] * y[b];
      if (prod.is_zero()) continue;
      for (const auto& [k, c] : L.bracket_of(a, b)) out[k] += prod * c;
    }
  }
  return out;
}

GradedElement differential(const GradedElement& x) {
  const DglaPresentation& L = x.dgla();
  GradedElement out(x.dgla_ptr(), x.trunc());
  for (int a = 0; a < L.total_dim(); ++a) {
    if (x[a].is_zero()) continue;
    for (const auto& [k, c] : L.d_of(a)) out[k] += x[a] * c;
  }
  return out;
}

namespace {

// [e_a, v] and [v, e_b] for sparse v
SparseVec br_left(const DglaPresentation& L, int a, const SparseVec& v) {
  SparseVec out;
  for (const auto& [k, c] : v)
    for (const auto& [j, e] : L.bracket_of(a, k)) accumulate(out, j, c * e);
  return out;
}

SparseVec br_right(const DglaPresentation& L, const SparseVec& v, int b) {
  SparseVec out;
  for (const auto& [k, c] : v)
    for (const auto& [j, e] : L.bracket_of(k, b)) accumulate(out, j, c * e);
  return out;
}

SparseVec d_sparse(const DglaPresentation& L, const SparseVec& v) {
  SparseVec out;
  for (const auto& [k, c] : v)
    for (const auto& [j, e] : L.d_of(k)) accumulate(out, j, c * e);
  return out;
}

void axpy(SparseVec& acc, const SparseVec& v, const Scalar& s) {
  for (const auto& [k, c] : v) accumulate(acc, k, c * s);
}

}  // namespace

ValidationReport validate_dgla(const DglaPresentation& L) {
  ValidationReport rep;
  int n = L.total_dim();
  auto fail = [&](const char* axiom, std::vector<int> w, std::string detail) {
    rep.ok = false;
    rep.axiom = axiom;
    rep.witness = std::move(w);
    rep.detail = std::move(detail);
    return rep;
  };
  for (int a = 0; a < n; ++a) {
    SparseVec dd = d_sparse(L, L.d_of(a));
    if (!sparse_is_zero(dd)) return fail("d_squared", {a}, "d(d(e_a)) != 0");
  }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      SparseVec s = L.bracket_of(a, b);
      int sg = sign_pow(long(L.degree_of(a)) * L.degree_of(b));
      axpy(s, L.bracket_of(b, a), Scalar(sg));
      if (!sparse_is_zero(s)) return fail("antisymmetry", {a, b}, "[a,b] + (-1)^{|a||b|}[b,a] != 0");
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // d[a,b] - [da,b] - (-1)^{|a|}[a,db]
      SparseVec s = d_sparse(L, L.bracket_of(a, b));
      axpy(s, br_right(L, L.d_of(a), b), Scalar(-1));
      axpy(s, br_left(L, a, L.d_of(b)), Scalar(-sign_pow(L.degree_of(a))));
      if (!sparse_is_zero(s)) return fail("leibniz", {a, b}, "d[a,b] != [da,b] + (-1)^{|a|}[a,db]");
    }
  // graded-antisymmetric Jacobiator: sorted triples suffice
  int lo = L.lo(), hi = L.hi();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      int pab = L.degree_of(a) + L.degree_of(b);
      for (int c = b; c < n; ++c) {
        int sum = pab + L.degree_of(c);
        if (sum > hi || sum < lo) continue;
        SparseVec bc = L.bracket_of(b, c);
        SparseVec ab = L.bracket_of(a, b);
        SparseVec ac = L.bracket_of(a, c);
        if (bc.empty() && ab.empty() && ac.empty()) continue;
        // [a,[b,c]] - [[a,b],c] - (-1)^{|a||b|}[b,[a,c]]
        SparseVec j = br_left(L, a, bc);
        axpy(j, br_right(L, ab, c), Scalar(-1));
        axpy(j, br_left(L, b, ac), Scalar(-sign_pow(long(L.degree_of(a)) * L.degree_of(b))));
        if (!sparse_is_zero(j)) return fail("jacobi", {a, b, c}, "graded Jacobi identity fails");
      }
    }
  return rep;
}

const std::vector<std::pair<std::vector<int>, Rational>>& bch_lie_words(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<std::pair<std::vector<int>, Rational>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  using Poly = std::map<std::vector<int>, Rational>;
  auto mul = [n](const Poly& p, const Poly& q) {
    Poly r;
    for (const auto& [u, a] : p)
      for (const auto& [v, b] : q) {
        if (static_cast<int>(u.size() + v.size()) > n) continue;
        std::vector<int> w = u;
        w.insert(w.end(), v.begin(), v.end());
        r[w] += a * b;
      }
    for (auto i = r.begin(); i != r.end();) i = (sgn(i->second) == 0) ? r.erase(i) : std::next(i);
    return r;
  };
  auto expo = [n](int letter) {
    Poly p;
    Rational f = 1;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) f /= k;
      p[std::vector<int>(k, letter)] = f;
    }
    return p;
  };
  Poly z = mul(expo(0), expo(1));
  z.erase(std::vector<int>{});
  Poly log, pw;
  pw[{}] = 1;
  for (int k = 1; k <= n; ++k) {
    pw = mul(pw, z);
    for (const auto& [w, c] : pw) log[w] += c * frac(k % 2 ? 1 : -1, k);
  }
  std::vector<std::pair<std::vector<int>, Rational>> out;
  for (const auto& [w, c] : log) {
    if (sgn(c) == 0 || w.empty()) continue;
    Rational coef = c / static_cast<long>(w.size());
    out.push_back({w, coef});
  }
  return cache.emplace(n, std::move(out)).first->second;
}

GradedElement bch(const GradedElement& x, const GradedElement& y) {
  if (!x.in_maximal_ideal() || !y.in_maximal_ideal())
    throw DomainError("BCH needs arguments in the maximal ideal");
  std::function<GradedElement(const GradedElement&, const GradedElement&)> br =
      [](const GradedElement& a, const GradedElement& b) { return bracket(a, b); };
  return bch_with<GradedElement>(x, y, x.trunc(), br);
}

GradedElement exp_ad(const GradedElement& x, const GradedElement& v) {
  if (!x.in_maximal_ideal()) throw DomainError("exp(ad x) needs x in the maximal ideal");
  GradedElement out = v;
  GradedElement term = v;
  for (int k = 1;; ++k) {
    term = bracket(x, term);
    if (term.is_zero()) break;
    term *= Scalar(frac(1, k));
    out += term;
    if (k > x.trunc() + 2 * max_pole_order() + 2) throw DomainError("ad x is not nilpotent");
  }
  return out;
}

}  // namespace defq
