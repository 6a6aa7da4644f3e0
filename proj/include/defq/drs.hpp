// De Rham-Sullivan collections of Hochschild cochains: one form on each
// simplex of a nerve with values in the Hochschild cochains of an algebra
// attached to that simplex, compatible under face restriction, and the
// differential d_DR + delta + i_R.
#ifndef DEFQ_DRS_HPP
#define DEFQ_DRS_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "defq/cosimplicial.hpp"
#include "defq/hochschild.hpp"
#include "defq/models.hpp"
#include "defq/sullivan.hpp"

namespace defq {

// sum of (form term) x (cochain) on one simplex; cochains use truncation 0
struct DrsForm {
  int p = 0;
  int alg_dim = 0;
  std::map<std::pair<FormTerm, int>, HochschildCochain> terms;  // key: (term, arity)

  DrsForm() = default;
  DrsForm(int simplex_dim, int dim) : p(simplex_dim), alg_dim(dim) {}
  void add(const FormTerm& t, const HochschildCochain& c, const Scalar& s = Scalar(1));
  void add(const DrsForm& o, const Scalar& s = Scalar(1));
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const DrsForm& a, const DrsForm& b) {
    return a.p == b.p && a.alg_dim == b.alg_dim && a.terms == b.terms;
  }
};

// alpha (x) D
DrsForm drs_tensor(const PolyForm& alpha, const HochschildCochain& d);

// Algebras on the simplices, inclusions A_s -> A_t and projections
// A_t -> A_s with proj * iota = 1 for s in t (matrices act on coordinate
// columns). R_s is a form of arity 0.
struct DrsSetting {
  Nerve nerve;
  std::vector<AlgebraPresentation> algebra;
  std::map<std::pair<int, int>, Matrix> inclusion;   // strict inclusions
  std::map<std::pair<int, int>, Matrix> projection;  // strict inclusions
  std::vector<DrsForm> curvature;                    // R per simplex

  // the same algebra everywhere, identity inclusions, zero R
  static DrsSetting constant(const Nerve& nerve, const AlgebraPresentation& a);
  const Matrix& iota(int s, int t) const { return inclusion.at({s, t}); }
  const Matrix& proj(int s, int t) const { return projection.at({s, t}); }
};

using DrsCollection = std::vector<DrsForm>;  // indexed by simplex id

// proj o D o iota^k. With `require_inside`, nullopt when a cochain of
// positive arity sends subalgebra inputs outside the subalgebra.
std::optional<HochschildCochain> restrict_cochain(const HochschildCochain& d, const Matrix& iota,
                                                  const Matrix& proj, bool require_inside);
// restriction of a form on simplex t to its face s
std::optional<DrsForm> restrict_form(const DrsSetting& S, int s, int t, const DrsForm& w,
                                     bool require_inside = true);

// Face compatibility for every s in t; witness (s, t). The curvature must be
// compatible, closed and valued in the centre; witness (s) or (s, t).
ValidationReport drs_validate(const DrsSetting& S, const DrsCollection& w);
ValidationReport drs_validate_curvature(const DrsSetting& S);

// d alpha D + (-1)^|alpha| alpha delta D + (-1)^{|alpha| + k} (R alpha) i_R D,
// with k the arity of D and i_R D = D o R
DrsForm drs_differential(const AlgebraPresentation& a, const DrsForm& R, const DrsForm& w);
DrsCollection drs_differential(const DrsSetting& S, const DrsCollection& w);

// a random form on the top simplex (the nerve must be a single simplex with
// its faces) restricted to every face; arities 0..max_arity, poly degree <=
// max_poly, rational coefficients
DrsCollection random_drs_collection(Rng& rng, const DrsSetting& S, int max_arity, int max_poly);
// restrict a form on the simplex `top` to all of its faces
DrsCollection drs_from_top(const DrsSetting& S, int top, const DrsForm& w);
// exact central curvature: d(beta) r for a random 1-form beta on the top simplex
// and r = sum of the given central elements with random coefficients
std::vector<DrsForm> random_exact_curvature(Rng& rng, const DrsSetting& S,
                                            const std::vector<std::vector<Scalar>>& central,
                                            int max_poly);

}  // namespace defq

#endif
