// Small reference DGLAs and seeded random generators shared by tests, the
// acceptance suite and the command-line tool.
#ifndef DEFQ_MODELS_HPP
#define DEFQ_MODELS_HPP

#include <cstdint>
#include <random>

#include "defq/dgla.hpp"
#include "defq/hochschild.hpp"

namespace defq {

// zero bracket, zero differential
DglaPtr make_abelian_dgla(int lo, std::vector<int> dims);
// sl2 in degree 0, basis (e, f, h)
DglaPtr make_sl2();
// sl2 tensor exterior algebra on two odd generators: degrees 0, 1, 2
DglaPtr make_sl2_exterior();
// sl2 tensor the cdga span{1, s, ds} with s^2 = s ds = 0: degrees 0, 1
DglaPtr make_sl2_interval();
// B = graded-commutative algebra on u (-1), w (1), s (0), q (2) with
// s^2 = q^2 = qw = 0, du = s, dw = q; 12-dimensional, degrees -1..2
DglaPtr make_cdga_model();       // B with zero bracket
DglaPtr make_heisenberg_model(); // heis tensor B, [x, y] = z, 36-dimensional
// deliberately broken presentations for negative tests
DglaPtr make_broken_d_squared();
DglaPtr make_broken_jacobi();

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(int num = 1, int den = 2) { return uniform(0, den - 1) < num; }
  Rational rational(int range = 3, int max_den = 2);
  Scalar scalar(int range = 3, int max_den = 2, bool complex = false);
  // random series with support in hbar^lo..hbar^trunc
  Series series(int trunc, int lo = 1, int zero_pct = 30);
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// random homogeneous element of degree p with coefficients in hbar^lo..
GradedElement random_element(Rng& rng, const DglaPtr& L, int p, int trunc, int lo = 1,
                             int sparsity = 2);

// random basis change of a known associative unital algebra of dimension 1..4
AlgebraPresentation random_associative_algebra(Rng& rng, int dim);
// sparse random structure constants, usually not associative
AlgebraPresentation random_algebra_table(Rng& rng, int dim);
HochschildCochain random_cochain(Rng& rng, int dim, int arity, int trunc, int lo = 1,
                                 int density_pct = 40);
Matrix random_invertible_matrix(Rng& rng, int n);

}  // namespace defq

#endif
