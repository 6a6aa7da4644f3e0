// Nerves of finite covers, simplicial sheaves of DGLAs, cosimplicial DGLAs
// and the Cech complexes relating them.
#ifndef DEFQ_COSIMPLICIAL_HPP
#define DEFQ_COSIMPLICIAL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "defq/dgla.hpp"

namespace defq {

using Simplex = std::vector<int>;  // strictly increasing vertex labels

// Abstract cover: the simplices are the index subsets with nonempty overlap.
class Nerve {
 public:
  Nerve() = default;
  // downward closure of the given simplices
  Nerve(int num_indices, const std::vector<Simplex>& generators);
  static Nerve full(int num_indices);

  int num_indices() const { return n_; }
  // ordered by size, then lexicographically
  const std::vector<Simplex>& simplices() const { return simplices_; }
  int size() const { return int(simplices_.size()); }
  const Simplex& simplex(int id) const { return simplices_[id]; }
  int index_of(const Simplex& s) const;  // -1 if absent
  bool contains(const Simplex& s) const { return index_of(s) >= 0; }
  int dimension() const;
  // weakly increasing chains s0 <= s1 <= ... <= sp as simplex ids
  std::vector<std::vector<int>> chains(int p) const;

 private:
  int n_ = 0;
  std::vector<Simplex> simplices_;
  std::map<Simplex, int> ids_;
};

bool is_subset(const Simplex& s, const Simplex& t);

// One DGLA per simplex, restriction r(s, t): L_t -> L_s for s in t.
struct SimplicialDglaSheaf {
  Nerve nerve;
  std::vector<DglaPtr> fiber;
  std::map<std::pair<int, int>, LinearMap> restriction;  // strict inclusions only

  LinearMap r(int s, int t) const;  // identity when s == t
  static SimplicialDglaSheaf constant(const Nerve& nerve, const DglaPtr& L);
};

// r(s,t) r(t,u) = r(s,u) and every restriction is a DGLA morphism
ValidationReport validate_sheaf(const SimplicialDglaSheaf& sheaf);

// Levels 0..cap with cofaces d_i: L^n -> L^{n+1} (0 <= i <= n+1) and
// codegeneracies s_i: L^{n+1} -> L^n (0 <= i <= n).
class CosimplicialDgla {
 public:
  CosimplicialDgla() = default;
  CosimplicialDgla(std::string name, std::vector<DglaPtr> levels,
                   std::vector<std::vector<LinearMap>> cofaces,
                   std::vector<std::vector<LinearMap>> codegeneracies);

  const std::string& name() const { return name_; }
  int cap() const { return int(levels_.size()) - 1; }
  const DglaPtr& level(int n) const { return levels_.at(n); }
  const LinearMap& coface(int n, int i) const { return cofaces_.at(n).at(i); }
  const LinearMap& codegeneracy(int n, int i) const { return codegen_.at(n).at(i); }

 private:
  std::string name_;
  std::vector<DglaPtr> levels_;
  std::vector<std::vector<LinearMap>> cofaces_;
  std::vector<std::vector<LinearMap>> codegen_;
};

// image of x under a linear map into the DGLA `target`
GradedElement apply_map(const LinearMap& f, const GradedElement& x, const DglaPtr& target);
GradedElement coface(const CosimplicialDgla& c, int n, int i, const GradedElement& x);
GradedElement codegeneracy(const CosimplicialDgla& c, int n, int i, const GradedElement& x);
// x in level m pushed to level n along the increasing map [m] -> [n] with
// image `vertices`; x_{i0..im} in the usual notation
GradedElement face_embed(const CosimplicialDgla& c, const GradedElement& x, int n,
                         const std::vector<int>& vertices);
// alternating sum of the cofaces, L^n -> L^{n+1}
GradedElement coboundary(const CosimplicialDgla& c, int n, const GradedElement& x);

// Cosimplicial identities, d and s commuting with the level differentials,
// and the bracket-morphism property on basis pairs of levels <= bracket_level.
ValidationReport validate_cosimplicial(const CosimplicialDgla& c, int bracket_level = 1);

// Direct product of DGLAs; `embed[j]` maps part j's basis into the sum.
struct DirectSum {
  DglaPtr sum;
  std::vector<std::vector<int>> embed;
};
DirectSum direct_sum(const std::string& name, const std::vector<DglaPtr>& parts);

// Functions on ordered (n+1)-tuples of indices with values in L: the Cech
// complex of the constant sheaf for a cover in which all overlaps are nonempty.
CosimplicialDgla tuple_cech_model(const DglaPtr& L, int num_indices, int cap);
// every level L, every coface and codegeneracy the identity
CosimplicialDgla constant_cosimplicial(const DglaPtr& L, int cap);
// level p = product over weak chains s0 <= ... <= sp of L_{s0}; d_0 restricts
// along s0 in s1, the other cofaces drop an entry, codegeneracies repeat one.
CosimplicialDgla cech_complex(const SimplicialDglaSheaf& sheaf, int cap);

// Element of the double complex: cosimplicial level -> homogeneous element.
using TotalCochain = std::map<int, GradedElement>;
// D = coboundary + (-1)^n d on level n; components beyond the cap are dropped
TotalCochain total_differential(const CosimplicialDgla& c, const TotalCochain& x);
bool is_zero(const TotalCochain& x);

}  // namespace defq

#endif
