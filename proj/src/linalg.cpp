#include "defq/linalg.hpp"

namespace defq {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw UsageError("matrix shape mismatch in product");
  Matrix m(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw UsageError("matrix shape mismatch");
  Matrix m = a;
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw UsageError("matrix shape mismatch");
  Matrix m = a;
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
  return m;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw UsageError("vector length mismatch");
  std::vector<Scalar> out(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    Scalar inv = Scalar(1) / m(row, col);
    for (int c = col; c < m.cols(); ++c)
      if (!m(row, c).is_zero()) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Scalar f = m(r, col);
      for (int c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(Matrix m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Scalar>> kernel_basis(Matrix m) {
  std::vector<int> piv = rref(m);
  std::vector<char> is_piv(m.cols(), 0);
  for (int p : piv) is_piv[p] = 1;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    std::vector<Scalar> v(m.cols());
    v[free] = Scalar(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(int(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw UsageError("inverse of non-square matrix");
  int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  std::vector<int> piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] >= n)
    throw DomainError("matrix is singular");
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

LinearMap LinearMap::identity(int n) {
  LinearMap f(n, n);
  for (int i = 0; i < n; ++i) f.cols[i].push_back({i, Scalar(1)});
  return f;
}

LinearMap LinearMap::from_dense(const Matrix& m) {
  LinearMap f(m.cols(), m.rows());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) f.cols[j].push_back({i, m(i, j)});
  return f;
}

Matrix LinearMap::to_dense() const {
  Matrix m(dst_dim, src_dim);
  for (int j = 0; j < src_dim; ++j)
    for (const auto& [i, c] : cols[j]) m(i, j) += c;
  return m;
}

void LinearMap::add(int row, int col, const Scalar& c) {
  if (c.is_zero()) return;
  for (auto& [i, x] : cols[col])
    if (i == row) {
      x += c;
      return;
    }
  cols[col].push_back({row, c});
}

LinearMap LinearMap::after(const LinearMap& other) const {
  if (other.dst_dim != src_dim) throw UsageError("composite of incompatible maps");
  LinearMap f(other.src_dim, dst_dim);
  for (int j = 0; j < other.src_dim; ++j) {
    std::vector<Scalar> acc(dst_dim);
    std::vector<char> touched(dst_dim, 0);
    for (const auto& [k, c] : other.cols[j])
      for (const auto& [i, d] : cols[k]) {
        acc[i] += c * d;
        touched[i] = 1;
      }
    for (int i = 0; i < dst_dim; ++i)
      if (touched[i] && !acc[i].is_zero()) f.cols[j].push_back({i, acc[i]});
  }
  return f;
}

}  // namespace defq
