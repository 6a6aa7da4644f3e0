// Finite presentations of nilpotent-coefficient DGLAs and their elements.
#ifndef DEFQ_DGLA_HPP
#define DEFQ_DGLA_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "defq/linalg.hpp"
#include "defq/scalars.hpp"

namespace defq {

using SparseVec = std::vector<std::pair<int, Scalar>>;

struct BracketTerm {
  int a;
  int b;
  int k;
  Scalar c;
};

// Graded basis over the exact scalars, degrees lo..hi, with a sparse
// differential and sparse bracket structure constants [e_a, e_b] = sum c e_k.
class DglaPresentation {
 public:
  DglaPresentation(std::string name, int lo, std::vector<int> dims);

  // differential block from degree p to p+1, shape dims[p+1] x dims[p]
  void set_differential(int p, const Matrix& m);
  void add_differential(int src, int dst, const Scalar& c);  // global indices
  void add_bracket(int a, int b, int k, const Scalar& c);
  // also records [e_b, e_a] = -(-1)^{|a||b|} c e_k
  void add_bracket_antisym(int a, int b, int k, const Scalar& c);

  const std::string& name() const { return name_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  int dim(int p) const;
  int total_dim() const { return total_; }
  int offset(int p) const;
  int degree_of(int idx) const { return degree_of_[idx]; }
  const std::vector<int>& dims() const { return dims_; }

  const SparseVec& d_of(int idx) const { return d_[idx]; }
  const SparseVec& bracket_of(int a, int b) const;
  // partners b with a nonzero [e_a, e_b]
  const std::vector<int>& partners(int a) const { return partners_[a]; }
  std::vector<BracketTerm> bracket_terms() const;
  Matrix differential_block(int p) const;

 private:
  void check_index(int idx) const;
  std::string name_;
  int lo_;
  std::vector<int> dims_;
  std::vector<int> offsets_;
  std::vector<int> degree_of_;
  int total_ = 0;
  std::vector<SparseVec> d_;
  std::unordered_map<long long, SparseVec> br_;
  std::vector<std::vector<int>> partners_;
};

using DglaPtr = std::shared_ptr<const DglaPresentation>;

// Element of L tensor a, a = truncated Laurent ring; one series per basis vector.
class GradedElement {
 public:
  GradedElement() = default;
  GradedElement(DglaPtr dgla, int trunc);
  static GradedElement basis(DglaPtr dgla, int trunc, int idx, const Series& coeff);

  const DglaPresentation& dgla() const { return *dgla_; }
  const DglaPtr& dgla_ptr() const { return dgla_; }
  int trunc() const { return trunc_; }
  const Series& operator[](int idx) const { return c_[idx]; }
  Series& operator[](int idx) { return c_[idx]; }
  const std::vector<Series>& coeffs() const { return c_; }

  bool is_zero() const;
  // all nonzero components live in degree p
  bool is_homogeneous(int p) const;
  bool in_maximal_ideal() const;
  GradedElement degree_part(int p) const;
  // lowest hbar power present (trunc+1 if zero)
  int valuation() const;

  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  GradedElement& operator*=(const Scalar& s);
  GradedElement& operator*=(const Series& s);
  GradedElement operator-() const;
  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(GradedElement a, const Scalar& s) { return a *= s; }
  friend GradedElement operator*(const Scalar& s, GradedElement a) { return a *= s; }
  friend GradedElement operator*(const Series& s, GradedElement a) { return a *= s; }
  friend bool operator==(const GradedElement& a, const GradedElement& b);
  friend bool operator!=(const GradedElement& a, const GradedElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void require_compatible(const GradedElement& o) const;
  DglaPtr dgla_;
  int trunc_ = 0;
  std::vector<Series> c_;
};

GradedElement bracket(const GradedElement& x, const GradedElement& y);
GradedElement differential(const GradedElement& x);

struct ValidationReport {
  bool ok = true;
  std::string axiom;           // failing axiom name
  std::vector<int> witness;    // basis indices
  std::string detail;
};

// d^2 = 0, graded antisymmetry, Leibniz, graded Jacobi on all basis tuples
ValidationReport validate_dgla(const DglaPresentation& L);

// Lie polynomial of log(e^x e^y) through word length n, as
// (word over {0 = x, 1 = y}, coefficient of the right-nested commutator)
const std::vector<std::pair<std::vector<int>, Rational>>& bch_lie_words(int n);

// log(e^x e^y) for x, y nilpotent of order <= n under an arbitrary bracket
template <class T>
T bch_with(const T& x, const T& y, int n, const std::function<T(const T&, const T&)>& br) {
  const auto& words = bch_lie_words(n);
  std::map<std::vector<int>, T> memo;
  std::function<const T&(const std::vector<int>&, size_t)> nested =
      [&](const std::vector<int>& w, size_t from) -> const T& {
    std::vector<int> key(w.begin() + from, w.end());
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    T v = from + 1 == w.size() ? (w[from] == 0 ? x : y)
                               : br(w[from] == 0 ? x : y, nested(w, from + 1));
    return memo.emplace(std::move(key), std::move(v)).first->second;
  };
  T out = x * Scalar(0);
  for (const auto& [w, c] : words) {
    const T& v = nested(w, 0);
    out += v * Scalar(c);
  }
  return out;
}

// BCH in L tensor m using the DGLA bracket
GradedElement bch(const GradedElement& x, const GradedElement& y);
// exp(ad x)(v), x of degree 0 in the maximal ideal
GradedElement exp_ad(const GradedElement& x, const GradedElement& v);

}  // namespace defq

#endif
