// Stack data on a finite cover, gerbes, twisted matrix algebras, local
// Hochschild cochains and the reconstruction of a stack datum from data
// indexed by chains of simplices.
#ifndef DEFQ_GERBE_HPP
#define DEFQ_GERBE_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defq/cosimplicial.hpp"
#include "defq/drs.hpp"
#include "defq/hochschild.hpp"
#include "defq/models.hpp"

namespace defq {

using Element = std::vector<Scalar>;  // coordinates in an algebra
using Pair = std::array<int, 2>;
using Triple = std::array<int, 3>;

// One algebra per object, isomorphisms G[{i, j}] : A_j -> A_i and units
// c[{i, j, k}] in A_i on the admissible pairs and triples. For a stack datum
// the objects are the indices of the cover and a tuple is admissible when
// its set of indices is a simplex (repetitions allowed). G_ii = id and
// c_iij = c_ijj = 1 are required.
struct StackDatum {
  Nerve nerve;
  std::vector<AlgebraPresentation> algebra;  // per index
  std::map<Pair, Matrix> G;
  std::map<Triple, Element> c;

  // G = id and c = 1 everywhere
  static StackDatum trivial(const Nerve& nerve, const AlgebraPresentation& base);
};

// The same shape indexed by weak chains of simplices s <= t <= r: algebras
// per simplex, G[{s, t}] : A_t -> A_s, c[{s, t, r}] in A_s.
struct ChainDatum {
  Nerve nerve;
  std::vector<AlgebraPresentation> algebra;  // per simplex id
  std::map<Pair, Matrix> G;
  std::map<Triple, Element> c;

  static ChainDatum trivial(const Nerve& nerve, const AlgebraPresentation& base);
};

// H[i] : A'_i -> A''_i and b[{i, j}] in A'_i
struct StackIso {
  std::vector<Matrix> H;
  std::map<Pair, Element> b;
};

struct StackCheck {
  std::string name;
  bool ok = true;
  std::vector<int> witness;
};
struct StackReport {
  bool ok = true;
  std::vector<StackCheck> checks;
  const StackCheck* first_failure() const;
};

// normalization, algebra isomorphisms, invertible units,
// G_ij G_jk = Ad(c_ijk) G_ik and c_ijk c_ikl = G_ij(c_jkl) c_ijl
StackReport validate_stack(const StackDatum& S);
StackReport validate_chain_datum(const ChainDatum& C);

// G''_ij = H_i Ad(b_ij) G'_ij H_j^-1 and H_i^-1(c''_ijk) = b_ij G'_ij(b_jk) c'_ijk b_ik^-1
bool stack_iso_verify(const StackIso& iso, const StackDatum& S1, const StackDatum& S2);
// the target datum determined by the two equations
StackDatum apply_stack_iso(const StackDatum& S, const StackIso& iso);
ChainDatum apply_chain_iso(const ChainDatum& C, const StackIso& iso);
StackIso identity_iso(const StackDatum& S);

// Twisted matrices over the indices of simplex `sigma`: basis (i, j, b) for
// i, j in the simplex and b a basis vector of A_i, ordered i, then j, then b.
struct TwistedLayout {
  std::vector<int> indices;
  std::vector<int> block_offset;  // per (position of i) * n + position of j
  int dim = 0;
  int slot(int i, int j, int b) const;
  std::array<int, 3> decode(int basis) const;  // (i, j, b)
};
TwistedLayout twisted_layout(const StackDatum& S, int sigma);
AlgebraPresentation twisted_matrix_build(const StackDatum& S, int sigma);

// a) zero-cochains are diagonal, b) inputs that do not chain give 0,
// c) values sit in the (i_1, j_k) slot. Witness: input basis indices then output.
ValidationReport local_cochain_check(const StackDatum& S, int sigma, const HochschildCochain& d);
HochschildCochain random_local_cochain(Rng& rng, const StackDatum& S, int sigma, int arity,
                                       int density_pct = 40);
// algebras Matr^sigma with their inclusions and slot projections; zero curvature
DrsSetting twisted_drs_setting(const StackDatum& S);

// chain data pulled back along s -> first vertex of s
ChainDatum chain_from_stack(const StackDatum& S);

struct BarycentricResult {
  StackReport coherence;  // of the input
  std::optional<StackDatum> datum;
};
// A_i = A_(i), G_ij = G_(i),(ij) G_(j),(ij)^-1 and c_ijk as the alternated
// product over the six faces of the subdivided triangle (ijk)
BarycentricResult barycentric_reconstruct(const ChainDatum& C);
// H_i = H_(i), b_ij = b_(i),(ij) b_(j),(ij)^-1
StackIso barycentric_iso(const ChainDatum& C, const StackIso& chain_iso);

// Generators. Units of the base are drawn as random invertible elements.
Element random_unit(Rng& rng, const AlgebraPresentation& a);
// gerbe with c the coboundary of a random unit-valued b (base commutative)
StackDatum random_coboundary_gerbe(Rng& rng, const Nerve& nerve, const AlgebraPresentation& base);
// G_ij = Ad(u_ij), c_ijk = u_ij u_jk u_ik^-1
StackDatum random_inner_stack(Rng& rng, const Nerve& nerve, const AlgebraPresentation& base);
// the same two constructions on chains
ChainDatum random_coboundary_chain(Rng& rng, const Nerve& nerve, const AlgebraPresentation& base);
ChainDatum random_inner_chain(Rng& rng, const Nerve& nerve, const AlgebraPresentation& base);
StackIso random_stack_iso(Rng& rng, const StackDatum& S);
StackIso random_chain_iso(Rng& rng, const ChainDatum& C);

// algebra helpers
Element unit_of(const AlgebraPresentation& a);
std::optional<Element> inverse_element(const AlgebraPresentation& a, const Element& x);
Matrix adjoint_matrix(const AlgebraPresentation& a, const Element& x);  // y -> x y x^-1
bool is_algebra_isomorphism(const AlgebraPresentation& src, const AlgebraPresentation& dst,
                            const Matrix& g);

// admissible tuples, in a fixed order
std::vector<std::vector<int>> stack_tuples(const Nerve& nerve, int length);

}  // namespace defq

#endif
