// Exact dense and sparse linear algebra over Gaussian rationals.
#ifndef DEFQ_LINALG_HPP
#define DEFQ_LINALG_HPP

#include <utility>
#include <vector>

#include "defq/scalars.hpp"

namespace defq {

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& operator()(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Scalar& operator()(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  bool is_zero() const;
  Matrix transpose() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> a_;
};

// in-place reduced row echelon form; returns pivot columns
std::vector<int> rref(Matrix& m);
int rank(Matrix m);
// columns span the null space
std::vector<std::vector<Scalar>> kernel_basis(Matrix m);
Matrix inverse(const Matrix& m);  // DomainError if singular

// Column-sparse linear map: cols[j] lists (row, coefficient) of the image of e_j.
struct LinearMap {
  int src_dim = 0;
  int dst_dim = 0;
  std::vector<std::vector<std::pair<int, Scalar>>> cols;

  LinearMap() = default;
  LinearMap(int src, int dst) : src_dim(src), dst_dim(dst), cols(src) {}
  static LinearMap identity(int n);
  static LinearMap from_dense(const Matrix& m);
  Matrix to_dense() const;
  void add(int row, int col, const Scalar& c);
  // composite this ∘ other
  LinearMap after(const LinearMap& other) const;
};

}  // namespace defq

#endif
