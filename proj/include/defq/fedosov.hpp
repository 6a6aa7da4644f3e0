// Formal Weyl algebra on a flat symplectic model: Moyal product, the
// operators delta and delta^-1, the Fedosov recursion for pairs (A, c), the
// characteristic class, the two equivalence moves, and the Rozansky-Witten
// contraction with the omega-pairing.
//
// Conventions. Fiber variables y^1..y^2n, base coordinates x^1..x^2n with
// one-forms dx^a. The symplectic form is omega = 1/2 w_ab dx^a dx^b and the
// Poisson tensor P satisfies P^ac w_bc = delta^a_b, so [y^a, y^b] = i hbar P^ab.
// A connection is d + ad(Gamma) with Gamma = (a + F) / (i hbar), where
// a = w_cb y^c dx^b makes ad(a / i hbar) equal delta = dx^a d/dy^a. The pair
// (A, c) is stored as (F, c); c lives in (1/hbar) W like the curvature.
#ifndef DEFQ_FEDOSOV_HPP
#define DEFQ_FEDOSOV_HPP

#include <map>
#include <string>
#include <vector>

#include "defq/linalg.hpp"
#include "defq/models.hpp"
#include "defq/scalars.hpp"

namespace defq {

struct SymplecticModel {
  int n = 1;     // half dimension
  Matrix omega;  // w_ab, antisymmetric and invertible
  Matrix poisson;  // P^ab

  // validates and fills the Poisson tensor; DomainError if degenerate
  static SymplecticModel from_form(const Matrix& omega);
  static SymplecticModel standard(int n);  // w(y^a, y^{a+n}) = 1
  int dim() const { return 2 * n; }
};

// dx^mask x^xexp hbar^hbar y^yexp, with the one-forms on the left
struct WeylKey {
  unsigned dx = 0;
  std::vector<int> x;
  int hbar = 0;
  std::vector<int> y;
  int form_degree() const;
  int y_degree() const;
  int x_degree() const;
  // base coordinates count too, so d does not lower the weight
  int weight() const { return y_degree() + 2 * hbar + form_degree() + x_degree(); }
  friend bool operator<(const WeylKey& a, const WeylKey& b);
  friend bool operator==(const WeylKey& a, const WeylKey& b) {
    return a.dx == b.dx && a.x == b.x && a.hbar == b.hbar && a.y == b.y;
  }
};

// Terms are kept when hbar <= max_hbar and weight <= max_weight; both bounds
// cut out ideals for all operations below. max_base only bounds the base
// degree of generated data and of the basis checked by fedosov_verify.
struct WeylTrunc {
  int max_hbar = 3;
  int max_weight = 6;
  int max_base = 0;
  bool keeps(const WeylKey& k) const;
  WeylTrunc widened(int extra) const { return {max_hbar + extra, max_weight + 2 * extra, max_base}; }
};

// Weyl-algebra-valued polynomial forms on the flat base
class WeylForm {
 public:
  WeylForm() = default;
  explicit WeylForm(int n) : n_(n) {}
  static WeylForm monomial(int n, const WeylKey& k, const Scalar& c = Scalar(1));
  static WeylForm generator(int n, int a);  // y^a

  int n() const { return n_; }
  const std::map<WeylKey, Scalar>& terms() const { return t_; }
  void add(const WeylKey& k, const Scalar& c);
  bool is_zero() const { return t_.empty(); }
  WeylForm truncated(const WeylTrunc& t) const;
  WeylForm y_independent_part() const;
  WeylForm y_dependent_part() const;
  int min_weight() const;  // large if zero

  WeylForm& operator+=(const WeylForm& o);
  WeylForm& operator-=(const WeylForm& o);
  WeylForm& operator*=(const Scalar& s);
  friend WeylForm operator+(WeylForm a, const WeylForm& b) { return a += b; }
  friend WeylForm operator-(WeylForm a, const WeylForm& b) { return a -= b; }
  friend WeylForm operator*(WeylForm a, const Scalar& s) { return a *= s; }
  friend bool operator==(const WeylForm& a, const WeylForm& b) {
    return a.n_ == b.n_ && a.t_ == b.t_;
  }
  std::string to_string() const;

 private:
  int n_ = 1;
  std::map<WeylKey, Scalar> t_;
};
using WeylElement = WeylForm;  // zero-forms without base dependence

// f * g = sum_k (i hbar / 2)^k / k! P^{a1 b1}..P^{ak bk} d_a f d_b g, with the
// one-form parts wedged
WeylForm moyal(const SymplecticModel& m, const WeylForm& f, const WeylForm& g, const WeylTrunc& t);
// graded commutator f*g - (-1)^{|f||g|} g*f
WeylForm weyl_bracket(const SymplecticModel& m, const WeylForm& f, const WeylForm& g,
                      const WeylTrunc& t);
// multiplication by 1 / (i hbar); DomainError if a pole of order two appears
WeylForm divide_by_ihbar(const WeylForm& f);
WeylForm multiply_by_ihbar(const WeylForm& f);

WeylForm base_d(const WeylForm& f);                 // d on the x-coefficients
WeylForm fiber_delta(const WeylForm& f);            // dx^a d/dy^a
WeylForm delta_inverse(const WeylForm& f);          // y^a i(d/dx^a) / (p + q)
WeylForm harmonic_part(const WeylForm& f);          // terms with p = q = 0
// a = w_cb y^c dx^b, the generator of A_-1 up to the factor 1 / (i hbar)
WeylForm canonical_form(const SymplecticModel& m);
// omega / (i hbar) and constant central two-forms (theta_ab dx^a dx^b / 2)
WeylForm central_two_form(const Matrix& theta, int hbar_power, int n);

// theta = omega / (i hbar) + sum_k (i hbar)^k theta_k
struct CentralSeries {
  Matrix leading;               // coefficient of 1 / (i hbar)
  std::vector<Matrix> orders;   // theta_0, theta_1, ...
  WeylForm to_form(int n) const;
};

struct FedosovPair {
  SymplecticModel model;
  WeylTrunc trunc;  // the reported range
  WeylForm F;       // A = ad(F / i hbar), F is y-dependent
  WeylForm c;
  int iterations = 0;
};

// Fedosov iteration F = delta(mu) + delta^-1(i hbar theta_0 - dF - F*F / i hbar)
// in the filtration; c = curvature - target. The seed mu (weight >= 3) fixes
// the normalization delta^-1 F = mu. DomainError when the leading term differs
// from omega.
FedosovPair fedosov_solve(const SymplecticModel& m, const CentralSeries& target,
                          const WeylTrunc& trunc, const WeylForm& seed = WeylForm());

// nabla f = df + delta f + [F, f] / (i hbar)
WeylForm fedosov_nabla(const FedosovPair& p, const WeylForm& f);
// the lifted curvature d Gamma + Gamma * Gamma, in (1/hbar) W
WeylForm lifted_curvature(const FedosovPair& p);

struct FlatnessReport {
  bool ok = true;
  std::string failure;   // "curvature" or "nabla c"
  WeylKey witness;       // basis element where nabla^2 != ad(c)
  long checked = 0;
};
// nabla^2 f = [c, f] on every basis zero-form of the reported range and nabla c = 0
FlatnessReport fedosov_verify(const FedosovPair& p);

struct CharacteristicClass {
  bool central = false;
  bool closed = false;
  WeylForm theta;        // as a form
  CentralSeries series;  // valid when central
};
CharacteristicClass characteristic_class(const FedosovPair& p);

// Result of an equivalence move. The new connection form only sees F up to
// y-independent terms; alpha collects the central one-form that was dropped,
// so the new class is theta - d alpha.
struct EquivalenceMove {
  FedosovPair pair;
  WeylForm alpha;
};
// (A, c) -> (exp(ad X) A, exp(ad X) c) with X = xi / (i hbar), weight(xi) >= 3
EquivalenceMove equivalence_gauge(const FedosovPair& p, const WeylForm& xi);
// (A, c) -> (A + B, c + nabla B + 1/2 [B, B]) with B = beta / (i hbar),
// beta a one-form of weight >= 3
EquivalenceMove equivalence_shift(const FedosovPair& p, const WeylForm& beta);

// random zero-form or one-form with terms of weight in [lo, t.max_weight]
WeylForm random_weyl(Rng& rng, int n, int form_degree, int lo, const WeylTrunc& t,
                     int density_pct = 30);

// RW_{jl} for R[a][b][i][j] symmetric in (a, b): S_jl = sum R_abij R_cdkl P^ac P^bd P^ik
// and the result is S_jl - S_lj (coefficient of dzbar^j dzbar^l, j < l)
using Tensor4 = std::vector<std::vector<std::vector<std::vector<Scalar>>>>;
Matrix rw_form(const Tensor4& R, const SymplecticModel& m);
// S_jl = sum alpha_ij beta_kl w_ik, antisymmetrized the same way
Matrix omega_pairing(const Matrix& alpha, const Matrix& beta, const SymplecticModel& m);

}  // namespace defq

#endif
