// Hochschild cochains of a finite-dimensional algebra, the Gerstenhaber
// bracket and the deformation DGLA C^{*+1}(A, A).
#ifndef DEFQ_HOCHSCHILD_HPP
#define DEFQ_HOCHSCHILD_HPP

#include <optional>
#include <string>
#include <vector>

#include "defq/dgla.hpp"
#include "defq/linalg.hpp"

namespace defq {

// structure constants e_a e_b = sum c e_k over the exact scalars
class AlgebraPresentation {
 public:
  AlgebraPresentation() = default;
  explicit AlgebraPresentation(int dim, std::string name = "algebra");

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  void add(int a, int b, int k, const Scalar& c);
  const SparseVec& product(int a, int b) const { return mult_[size_t(a) * dim_ + b]; }
  // coordinates of the unit, if the presentation records one
  const std::optional<std::vector<Scalar>>& unit() const { return unit_; }
  void set_unit(std::vector<Scalar> u);

  std::vector<Scalar> multiply(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;
  // first basis triple violating (ab)c = a(bc), empty if associative
  std::vector<int> associativity_witness() const;
  bool is_associative() const { return associativity_witness().empty(); }
  bool is_commutative() const;
  // center as a basis of coordinate vectors
  std::vector<std::vector<Scalar>> center_basis() const;

 private:
  int dim_ = 0;
  std::string name_;
  std::vector<SparseVec> mult_;
  std::optional<std::vector<Scalar>> unit_;
};

AlgebraPresentation truncated_polynomial_algebra(int k);  // k[x]/(x^k)
AlgebraPresentation matrix_algebra(int n);                // basis E_ij at i*n + j
AlgebraPresentation upper_triangular_algebra();           // E11, E12, E22
AlgebraPresentation product_algebra(int copies);          // k x ... x k
// new basis vectors are the columns of p
AlgebraPresentation change_basis(const AlgebraPresentation& a, const Matrix& p);

// k-linear map A^{tensor arity} -> A tensor (truncated Laurent ring)
class HochschildCochain {
 public:
  HochschildCochain() = default;
  HochschildCochain(int dim, int arity, int trunc);

  int dim() const { return dim_; }
  int arity() const { return arity_; }
  int degree() const { return arity_ - 1; }  // degree in the deformation DGLA
  int trunc() const { return trunc_; }
  size_t num_inputs() const { return inputs_; }
  std::vector<int> args_of(size_t input) const;
  size_t index_of(const std::vector<int>& args) const;

  Series& at(size_t input, int out) { return v_[input * dim_ + out]; }
  const Series& at(size_t input, int out) const { return v_[input * dim_ + out]; }
  Series& at(const std::vector<int>& args, int out) { return at(index_of(args), out); }
  const Series& at(const std::vector<int>& args, int out) const { return at(index_of(args), out); }
  const std::vector<Series>& flat() const { return v_; }
  std::vector<Series>& flat() { return v_; }

  bool is_zero() const;
  bool input_is_zero(size_t input) const;
  // vanishes whenever an argument is the unit basis vector
  bool is_normalized(int unit_index) const;

  HochschildCochain& operator+=(const HochschildCochain& o);
  HochschildCochain& operator-=(const HochschildCochain& o);
  HochschildCochain& operator*=(const Scalar& s);
  HochschildCochain& operator*=(const Series& s);
  friend HochschildCochain operator+(HochschildCochain a, const HochschildCochain& b) {
    return a += b;
  }
  friend HochschildCochain operator-(HochschildCochain a, const HochschildCochain& b) {
    return a -= b;
  }
  friend HochschildCochain operator*(HochschildCochain a, const Scalar& s) { return a *= s; }
  friend HochschildCochain operator*(const Series& s, HochschildCochain a) { return a *= s; }
  friend bool operator==(const HochschildCochain& a, const HochschildCochain& b);
  friend bool operator!=(const HochschildCochain& a, const HochschildCochain& b) {
    return !(a == b);
  }

 private:
  void require_shape(const HochschildCochain& o) const;
  int dim_ = 0;
  int arity_ = 0;
  int trunc_ = 0;
  size_t inputs_ = 1;
  std::vector<Series> v_;
};

// multiplication of a as a 2-cochain, identity as a 1-cochain
HochschildCochain multiplication_cochain(const AlgebraPresentation& a, int trunc);
HochschildCochain identity_cochain(int dim, int trunc);
// zero-cochain with the given value
HochschildCochain element_cochain(const std::vector<Series>& value);

// (D o E)(a..) = sum_i (-1)^{i(l-1)} D(a_1..a_i, E(a_{i+1}..a_{i+l}), ..)
HochschildCochain brace(const HochschildCochain& d, const HochschildCochain& e);
// [D, E] = D o E - (-1)^{|D||E|} E o D with |D| = arity - 1
HochschildCochain gerstenhaber(const HochschildCochain& d, const HochschildCochain& e);
// DGLA differential [m, D]
HochschildCochain hochschild_delta(const AlgebraPresentation& a, const HochschildCochain& d);
// classical differential, equal to (-1)^{|D|} [m, D]
HochschildCochain hochschild_delta_classical(const AlgebraPresentation& a,
                                             const HochschildCochain& d);
// sum_i (-1)^i D(a_1..a_i, R, a_{i+1}..) = D o R for a zero-cochain R
HochschildCochain contract_i_R(const HochschildCochain& r, const HochschildCochain& d);

// [m, lambda] + 1/2 [lambda, lambda]
HochschildCochain hochschild_mc_defect(const AlgebraPresentation& a,
                                       const HochschildCochain& lambda);
// direct check that m + lambda is associative on every basis triple
bool deformed_table_is_associative(const AlgebraPresentation& a,
                                   const HochschildCochain& lambda);

// Materialized window of C^{*+1}(A, A) in degrees min_degree..max_degree;
// brackets and differentials landing above max_degree are dropped. Basis of
// degree p is the flattened layout of arity p+1 cochains.
//
// With min_degree >= 0 the dropped part is an ideal and the window is a
// genuine DGLA. With min_degree = -1 it is not: brackets with degree -1
// cochains bring degree max_degree+1 back down. The window is still exact
// for every computation whose intermediate terms stay in range, which
// covers the Maurer-Cartan, gauge and two-morphism operations.
DglaPtr hochschild_dgla(const AlgebraPresentation& a, int max_degree = 2, int min_degree = -1);
// Exact check of d^2 = 0, antisymmetry, Leibniz and Jacobi for all basis
// cochains of degrees -1..max_degree whose identity lands in degree <= max_degree;
// intermediate terms of any arity are computed without truncation. Witness
// indices refer to the layout of hochschild_dgla(a, max_degree).
ValidationReport validate_hochschild(const AlgebraPresentation& a, int max_degree = 2);
GradedElement cochain_to_element(const DglaPtr& L, const HochschildCochain& c);
HochschildCochain element_to_cochain(const GradedElement& x, int dim, int degree);

}  // namespace defq

#endif
