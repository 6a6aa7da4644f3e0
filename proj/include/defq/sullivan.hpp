// Polynomial differential forms on standard simplices, forms with values in
// the levels of a cosimplicial DGLA, and the totalization built from
// compatible families of such forms.
#ifndef DEFQ_SULLIVAN_HPP
#define DEFQ_SULLIVAN_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "defq/cosimplicial.hpp"
#include "defq/models.hpp"

namespace defq {

// t_1^e1 .. t_p^ep dt_{i1} .. dt_{ik}; bit i-1 of mask stands for dt_i.
// The coordinate t_0 = 1 - t_1 - .. - t_p is eliminated.
struct FormTerm {
  std::vector<int> exps;
  unsigned mask = 0;
  int form_degree() const;
  int poly_degree() const;
  friend bool operator<(const FormTerm& a, const FormTerm& b) {
    return a.mask != b.mask ? a.mask < b.mask : a.exps < b.exps;
  }
  friend bool operator==(const FormTerm& a, const FormTerm& b) {
    return a.mask == b.mask && a.exps == b.exps;
  }
};

// scalar-valued polynomial form on the p-simplex
class PolyForm {
 public:
  explicit PolyForm(int p = 0) : p_(p) {}
  static PolyForm constant(int p, const Scalar& c);
  static PolyForm coordinate(int p, int i);  // t_i, 0 <= i <= p
  static PolyForm dcoordinate(int p, int i);  // dt_i, 0 <= i <= p

  int simplex_dim() const { return p_; }
  const std::map<FormTerm, Scalar>& terms() const { return t_; }
  void add(const FormTerm& term, const Scalar& c);
  bool is_zero() const { return t_.empty(); }
  int poly_degree() const;  // -1 for zero

  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  PolyForm& operator*=(const Scalar& s);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(PolyForm a, const Scalar& s) { return a *= s; }
  friend bool operator==(const PolyForm& a, const PolyForm& b) {
    return a.p_ == b.p_ && a.t_ == b.t_;
  }
  std::string to_string() const;

 private:
  int p_;
  std::map<FormTerm, Scalar> t_;
};

PolyForm sullivan_d(const PolyForm& w);
PolyForm wedge(const PolyForm& a, const PolyForm& b);
// sign of dt_a wedge dt_b against the merged mask, 0 if they overlap
int wedge_sign(unsigned a, unsigned b);

// Monotone maps [q] -> [p] as vertex images.
std::vector<int> coface_map(int p, int i);         // [p-1] -> [p], misses i
std::vector<int> codegeneracy_map(int p, int i);   // [p+1] -> [p], hits i twice
std::vector<int> face_inclusion(const std::vector<int>& vertices);  // onto these vertices
// pullback of a form on the p-simplex along f: [q] -> [p]
PolyForm pullback(const PolyForm& w, const std::vector<int>& f);
// restriction to the face spanned by increasing `vertices`
PolyForm restrict_to_face(const PolyForm& w, const std::vector<int>& vertices);

// all terms on the p-simplex of the given form degree and poly degree <= max
std::vector<FormTerm> form_terms(int p, int form_degree, int max_poly_degree);
// dims of H^k for k = 0..p, computed with polynomial degree <= max_poly_degree
// closed forms against images of forms of degree <= max_poly_degree + 1
std::vector<int> sullivan_cohomology_dims(int p, int max_poly_degree);

// form on the p-simplex with coefficients in a DGLA, sparse over its basis
struct VectorForm {
  int p = 0;
  DglaPtr L;
  std::map<FormTerm, std::map<int, Scalar>> terms;

  VectorForm() = default;
  VectorForm(int simplex_dim, DglaPtr values) : p(simplex_dim), L(std::move(values)) {}
  void add(const FormTerm& t, int basis, const Scalar& c);
  void add(const VectorForm& o, const Scalar& c = Scalar(1));
  bool is_zero() const { return terms.empty(); }
  int poly_degree() const;
  friend bool operator==(const VectorForm& a, const VectorForm& b) {
    return a.p == b.p && a.L == b.L && a.terms == b.terms;
  }
};

// alpha (x) x with alpha a scalar form
VectorForm tensor(const PolyForm& alpha, const DglaPtr& L, const std::map<int, Scalar>& x);
// D(alpha x) = d alpha x + (-1)^|alpha| alpha dx
VectorForm form_differential(const VectorForm& w);
// [alpha x, beta y] = (-1)^{|x||beta|} alpha beta [x, y]
VectorForm form_bracket(const VectorForm& a, const VectorForm& b);
VectorForm form_pullback(const VectorForm& w, const std::vector<int>& f);
VectorForm form_apply(const VectorForm& w, const LinearMap& m, const DglaPtr& target);

// family of forms, level n on the n-simplex with values in level n
struct TotFamily {
  std::vector<VectorForm> levels;
};

// every coface and codegeneracy compatibility among the levels present;
// the witness is (kind, level, index) with kind 0 = coface, 1 = codegeneracy
ValidationReport tot_compatible(const CosimplicialDgla& c, const TotFamily& w);
TotFamily tot_differential(const TotFamily& w);
TotFamily tot_bracket(const TotFamily& a, const TotFamily& b);
TotFamily tot_zero(const CosimplicialDgla& c, int level_cap);
bool is_zero(const TotFamily& w);
TotFamily operator+(const TotFamily& a, const TotFamily& b);
TotFamily scaled(const TotFamily& a, const Scalar& s);

// Compatible families up to level_cap with polynomial degree <= poly_degree,
// degree by degree. The presentation's degree-k basis is basis[k]; its
// differential is exact (d lowers polynomial degree). Brackets are recorded
// only when the product stays within the polynomial-degree bound, the rest
// is counted in dropped_brackets.
struct Totalization {
  int level_cap = 0;
  int poly_degree = 0;
  std::map<int, std::vector<TotFamily>> basis;
  DglaPtr presentation;
  long dropped_brackets = 0;
  bool brackets_computed = false;

  // coordinates of a compatible family in the degree-k basis; throws if outside
  std::vector<Scalar> coordinates(int degree, const TotFamily& w) const;
  TotFamily family(int degree, const std::vector<Scalar>& coords) const;

  // unknowns (level, term, basis index) of each degree and, per basis
  // vector, the unknown where it is 1 while the others vanish
  struct Layout {
    std::vector<std::tuple<int, FormTerm, int>> unknowns;
    std::map<std::tuple<int, FormTerm, int>, int> index;
    std::vector<int> free_cols;
    std::vector<std::vector<Scalar>> vectors;
  };
  std::map<int, Layout> layouts;
};

Totalization totalize(const CosimplicialDgla& c, int level_cap, int poly_degree = 4,
                      bool with_brackets = true);
// closed elements of degree k, counted inside the presentation
int tot_closed_dimension(const Totalization& t, int degree);

// Whitney map: x on level k goes to W(x)_p = sum over I of k! w_I (x) x_I,
// w_I = sum_j (-1)^j t_{i_j} dt_{i_0} .. ^ .. dt_{i_k}. Uses the hbar^order
// coefficients of a total cochain.
TotFamily whitney(const CosimplicialDgla& c, const TotalCochain& x, int order, int level_cap);
// hbar^order part of D w + 1/2 [w, w] for w = sum_k hbar^k W(x^(k))
TotFamily whitney_mc_defect(const CosimplicialDgla& c, const TotalCochain& x, int order,
                            int level_cap);
// basis of the normalized cochains (killed by every codegeneracy) on level n,
// degree p, as coordinate vectors of level n
std::vector<std::vector<Scalar>> normalized_basis(const CosimplicialDgla& c, int n, int p);
// random combination of that basis with coefficients in hbar^1..hbar^trunc
GradedElement random_normalized_element(Rng& rng, const CosimplicialDgla& c, int n, int p,
                                        int trunc);

}  // namespace defq

#endif
