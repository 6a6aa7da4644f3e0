#include "defq/sullivan.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace defq {

namespace {

void prune(std::map<int, Scalar>& v) {
  for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
}

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// images of the target coordinates t_1..t_p under pullback along f
std::vector<PolyForm> coordinate_images(int q, int p, const std::vector<int>& f) {
  std::vector<PolyForm> img(p + 1, PolyForm(q));
  for (int i = 0; i <= q; ++i) img[f[i]] += PolyForm::coordinate(q, i);
  return img;
}

void check_monotone(const std::vector<int>& f, int p) {
  if (f.empty()) throw UsageError("simplicial map needs at least one vertex");
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0 || f[i] > p) throw UsageError("simplicial map leaves the target simplex");
    if (i && f[i] < f[i - 1]) throw UsageError("simplicial map must be monotone");
  }
}

std::map<int, Scalar> apply_sparse(const LinearMap& m, const std::map<int, Scalar>& x) {
  std::map<int, Scalar> out;
  for (const auto& [j, c] : x)
    for (const auto& [r, v] : m.cols[j]) out[r] += c * v;
  prune(out);
  return out;
}

std::map<int, Scalar> d_sparse(const DglaPresentation& L, const std::map<int, Scalar>& x) {
  std::map<int, Scalar> out;
  for (const auto& [a, c] : x)
    for (const auto& [k, v] : L.d_of(a)) out[k] += c * v;
  prune(out);
  return out;
}

}  // namespace

int FormTerm::form_degree() const { return std::popcount(mask); }

int FormTerm::poly_degree() const {
  int s = 0;
  for (int e : exps) s += e;
  return s;
}

PolyForm PolyForm::constant(int p, const Scalar& c) {
  PolyForm w(p);
  w.add(FormTerm{std::vector<int>(p, 0), 0}, c);
  return w;
}

PolyForm PolyForm::coordinate(int p, int i) {
  if (i < 0 || i > p) throw UsageError("coordinate index out of range");
  PolyForm w(p);
  if (i == 0) {
    w = constant(p, Scalar(1));
    for (int j = 1; j <= p; ++j) w -= coordinate(p, j);
    return w;
  }
  FormTerm t{std::vector<int>(p, 0), 0};
  t.exps[i - 1] = 1;
  w.add(t, Scalar(1));
  return w;
}

PolyForm PolyForm::dcoordinate(int p, int i) { return sullivan_d(coordinate(p, i)); }

void PolyForm::add(const FormTerm& term, const Scalar& c) {
  if (int(term.exps.size()) != p_ || (p_ < 32 && (term.mask >> p_) != 0))
    throw UsageError("form term does not fit the simplex");
  if (c.is_zero()) return;
  auto it = t_.find(term);
  if (it == t_.end()) {
    t_.emplace(term, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

int PolyForm::poly_degree() const {
  int d = -1;
  for (const auto& [t, c] : t_) d = std::max(d, t.poly_degree());
  return d;
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  if (o.p_ != p_) throw UsageError("forms on different simplices");
  for (const auto& [t, c] : o.t_) add(t, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
  if (o.p_ != p_) throw UsageError("forms on different simplices");
  for (const auto& [t, c] : o.t_) add(t, -c);
  return *this;
}

PolyForm& PolyForm::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [t, c] : t_) c *= s;
  return *this;
}

std::string PolyForm::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int i = 0; i < p_; ++i)
      if (t.exps[i]) os << "*t" << i + 1 << (t.exps[i] > 1 ? "^" + std::to_string(t.exps[i]) : "");
    for (int i = 0; i < p_; ++i)
      if (t.mask >> i & 1u) os << "*dt" << i + 1;
  }
  return os.str();
}

int wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  // each dt in b moves left past the dts of a with larger index
  int swaps = 0;
  for (unsigned bb = b; bb; bb &= bb - 1) {
    unsigned low = bb & (~bb + 1);
    swaps += std::popcount(a & ~(low - 1) & ~low);
  }
  return swaps % 2 ? -1 : 1;
}

PolyForm sullivan_d(const PolyForm& w) {
  int p = w.simplex_dim();
  PolyForm out(p);
  for (const auto& [t, c] : w.terms())
    for (int i = 0; i < p; ++i) {
      if (t.exps[i] == 0 || (t.mask >> i & 1u)) continue;
      FormTerm n = t;
      n.exps[i] -= 1;
      n.mask |= 1u << i;
      int sign = std::popcount(t.mask & ((1u << i) - 1)) % 2 ? -1 : 1;
      out.add(n, c * Scalar(t.exps[i] * sign));
    }
  return out;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
  if (a.simplex_dim() != b.simplex_dim()) throw UsageError("forms on different simplices");
  int p = a.simplex_dim();
  PolyForm out(p);
  for (const auto& [s, x] : a.terms())
    for (const auto& [t, y] : b.terms()) {
      int sign = wedge_sign(s.mask, t.mask);
      if (!sign) continue;
      FormTerm n{s.exps, s.mask | t.mask};
      for (int i = 0; i < p; ++i) n.exps[i] += t.exps[i];
      out.add(n, x * y * Scalar(sign));
    }
  return out;
}

std::vector<int> coface_map(int p, int i) {
  if (p < 1 || i < 0 || i > p) throw UsageError("coface index out of range");
  std::vector<int> f;
  for (int v = 0; v <= p; ++v)
    if (v != i) f.push_back(v);
  return f;
}

std::vector<int> codegeneracy_map(int p, int i) {
  if (p < 0 || i < 0 || i > p) throw UsageError("codegeneracy index out of range");
  std::vector<int> f;
  for (int v = 0; v <= p + 1; ++v) f.push_back(v <= i ? v : v - 1);
  return f;
}

std::vector<int> face_inclusion(const std::vector<int>& vertices) { return vertices; }

PolyForm pullback(const PolyForm& w, const std::vector<int>& f) {
  int p = w.simplex_dim();
  check_monotone(f, p);
  int q = int(f.size()) - 1;
  std::vector<PolyForm> img = coordinate_images(q, p, f);
  std::vector<PolyForm> dimg;
  for (const auto& x : img) dimg.push_back(sullivan_d(x));
  std::map<std::pair<int, int>, PolyForm> powers;
  std::function<const PolyForm&(int, int)> power = [&](int j, int e) -> const PolyForm& {
    auto it = powers.find({j, e});
    if (it != powers.end()) return it->second;
    PolyForm v = e == 0 ? PolyForm::constant(q, Scalar(1)) : wedge(power(j, e - 1), img[j]);
    return powers.emplace(std::make_pair(j, e), std::move(v)).first->second;
  };
  PolyForm out(q);
  for (const auto& [t, c] : w.terms()) {
    PolyForm acc = PolyForm::constant(q, c);
    for (int j = 1; j <= p && !acc.is_zero(); ++j)
      if (t.exps[j - 1]) acc = wedge(acc, power(j, t.exps[j - 1]));
    for (int j = 1; j <= p && !acc.is_zero(); ++j)
      if (t.mask >> (j - 1) & 1u) acc = wedge(acc, dimg[j]);
    out += acc;
  }
  return out;
}

PolyForm restrict_to_face(const PolyForm& w, const std::vector<int>& vertices) {
  for (size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i] <= vertices[i - 1]) throw UsageError("face vertices must increase");
  return pullback(w, vertices);
}

std::vector<FormTerm> form_terms(int p, int form_degree, int max_poly_degree) {
  std::vector<FormTerm> out;
  if (form_degree < 0 || form_degree > p) return out;
  std::vector<std::vector<int>> exps;
  std::vector<int> cur(p, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == p) {
      exps.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(0, max_poly_degree);
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    if (std::popcount(mask) != form_degree) continue;
    for (const auto& e : exps) out.push_back(FormTerm{e, mask});
  }
  return out;
}

std::vector<int> sullivan_cohomology_dims(int p, int max_poly_degree) {
  // matrix of d from form degree k (poly <= bound_src) into form degree k+1
  auto d_matrix = [p](int k, int bound_src, int bound_dst) {
    std::vector<FormTerm> src = form_terms(p, k, bound_src);
    std::vector<FormTerm> dst = form_terms(p, k + 1, bound_dst);
    std::map<FormTerm, int> row;
    for (size_t i = 0; i < dst.size(); ++i) row[dst[i]] = int(i);
    Matrix m(int(dst.size()), int(src.size()));
    for (size_t j = 0; j < src.size(); ++j) {
      PolyForm w(p);
      w.add(src[j], Scalar(1));
      PolyForm dw = sullivan_d(w);
      for (const auto& [t, c] : dw.terms()) m(row.at(t), int(j)) = c;
    }
    return m;
  };
  std::vector<int> dims;
  for (int k = 0; k <= p; ++k) {
    int n = int(form_terms(p, k, max_poly_degree).size());
    int closed = n - (k < p ? rank(d_matrix(k, max_poly_degree, max_poly_degree)) : 0);
    int exact = k > 0 ? rank(d_matrix(k - 1, max_poly_degree + 1, max_poly_degree)) : 0;
    dims.push_back(closed - exact);
  }
  return dims;
}

void VectorForm::add(const FormTerm& t, int basis, const Scalar& c) {
  if (c.is_zero()) return;
  auto& v = terms[t];
  v[basis] += c;
  if (v[basis].is_zero()) v.erase(basis);
  if (v.empty()) terms.erase(t);
}

void VectorForm::add(const VectorForm& o, const Scalar& c) {
  if (o.p != p || o.L != L) throw UsageError("vector forms of different shapes");
  for (const auto& [t, v] : o.terms)
    for (const auto& [a, x] : v) add(t, a, x * c);
}

int VectorForm::poly_degree() const {
  int d = -1;
  for (const auto& [t, v] : terms) d = std::max(d, t.poly_degree());
  return d;
}

VectorForm tensor(const PolyForm& alpha, const DglaPtr& L, const std::map<int, Scalar>& x) {
  VectorForm out(alpha.simplex_dim(), L);
  for (const auto& [t, c] : alpha.terms())
    for (const auto& [a, v] : x) out.add(t, a, c * v);
  return out;
}

VectorForm form_differential(const VectorForm& w) {
  VectorForm out(w.p, w.L);
  for (const auto& [t, v] : w.terms) {
    PolyForm alpha(w.p);
    alpha.add(t, Scalar(1));
    out.add(tensor(sullivan_d(alpha), w.L, v));
    int sign = t.form_degree() % 2 ? -1 : 1;
    for (const auto& [a, x] : d_sparse(*w.L, v)) out.add(t, a, x * Scalar(sign));
  }
  return out;
}

VectorForm form_bracket(const VectorForm& a, const VectorForm& b) {
  if (a.p != b.p || a.L != b.L) throw UsageError("vector forms of different shapes");
  VectorForm out(a.p, a.L);
  for (const auto& [s, x] : a.terms)
    for (const auto& [t, y] : b.terms) {
      int ws = wedge_sign(s.mask, t.mask);
      if (!ws) continue;
      FormTerm n{s.exps, s.mask | t.mask};
      for (int i = 0; i < a.p; ++i) n.exps[i] += t.exps[i];
      for (const auto& [i, ci] : x) {
        int sign = ws * ((a.L->degree_of(i) * t.form_degree()) % 2 ? -1 : 1);
        for (const auto& [j, cj] : y)
          for (const auto& [k, ck] : a.L->bracket_of(i, j)) out.add(n, k, ci * cj * ck * Scalar(sign));
      }
    }
  return out;
}

VectorForm form_pullback(const VectorForm& w, const std::vector<int>& f) {
  VectorForm out(int(f.size()) - 1, w.L);
  for (const auto& [t, v] : w.terms) {
    PolyForm alpha(w.p);
    alpha.add(t, Scalar(1));
    out.add(tensor(pullback(alpha, f), w.L, v));
  }
  return out;
}

VectorForm form_apply(const VectorForm& w, const LinearMap& m, const DglaPtr& target) {
  if (m.src_dim != w.L->total_dim() || m.dst_dim != target->total_dim())
    throw UsageError("linear map shape mismatch");
  VectorForm out(w.p, target);
  for (const auto& [t, v] : w.terms)
    for (const auto& [a, x] : apply_sparse(m, v)) out.add(t, a, x);
  return out;
}

ValidationReport tot_compatible(const CosimplicialDgla& c, const TotFamily& w) {
  ValidationReport rep;
  int cap = int(w.levels.size()) - 1;
  if (cap > c.cap()) throw UsageError("family has more levels than the cosimplicial DGLA");
  for (int p = 0; p <= cap; ++p)
    if (w.levels[p].p != p || w.levels[p].L != c.level(p))
      throw UsageError("family level " + std::to_string(p) + " has the wrong shape");
  for (int p = 1; p <= cap; ++p)
    for (int i = 0; i <= p; ++i) {
      VectorForm lhs = form_pullback(w.levels[p], coface_map(p, i));
      VectorForm rhs = form_apply(w.levels[p - 1], c.coface(p - 1, i), c.level(p));
      if (!(lhs == rhs)) {
        rep.ok = false;
        rep.axiom = "coface compatibility";
        rep.witness = {0, p, i};
        return rep;
      }
    }
  for (int p = 0; p < cap; ++p)
    for (int i = 0; i <= p; ++i) {
      VectorForm lhs = form_pullback(w.levels[p], codegeneracy_map(p, i));
      VectorForm rhs = form_apply(w.levels[p + 1], c.codegeneracy(p, i), c.level(p));
      if (!(lhs == rhs)) {
        rep.ok = false;
        rep.axiom = "codegeneracy compatibility";
        rep.witness = {1, p, i};
        return rep;
      }
    }
  return rep;
}

TotFamily tot_differential(const TotFamily& w) {
  TotFamily out;
  for (const auto& l : w.levels) out.levels.push_back(form_differential(l));
  return out;
}

TotFamily tot_bracket(const TotFamily& a, const TotFamily& b) {
  if (a.levels.size() != b.levels.size()) throw UsageError("families of different lengths");
  TotFamily out;
  for (size_t p = 0; p < a.levels.size(); ++p)
    out.levels.push_back(form_bracket(a.levels[p], b.levels[p]));
  return out;
}

TotFamily tot_zero(const CosimplicialDgla& c, int level_cap) {
  if (level_cap > c.cap()) throw UsageError("level cap beyond the cosimplicial DGLA");
  TotFamily out;
  for (int p = 0; p <= level_cap; ++p) out.levels.emplace_back(p, c.level(p));
  return out;
}

bool is_zero(const TotFamily& w) {
  for (const auto& l : w.levels)
    if (!l.is_zero()) return false;
  return true;
}

TotFamily operator+(const TotFamily& a, const TotFamily& b) {
  if (a.levels.size() != b.levels.size()) throw UsageError("families of different lengths");
  TotFamily out = a;
  for (size_t p = 0; p < a.levels.size(); ++p) out.levels[p].add(b.levels[p]);
  return out;
}

TotFamily scaled(const TotFamily& a, const Scalar& s) {
  TotFamily out;
  for (const auto& l : a.levels) {
    VectorForm v(l.p, l.L);
    v.add(l, s);
    out.levels.push_back(std::move(v));
  }
  return out;
}

namespace {

using Key = std::tuple<int, FormTerm, int>;

std::vector<Scalar> flatten(const Totalization::Layout& lay, const TotFamily& w) {
  std::vector<Scalar> v(lay.unknowns.size());
  for (size_t p = 0; p < w.levels.size(); ++p)
    for (const auto& [t, vec] : w.levels[p].terms)
      for (const auto& [a, x] : vec) {
        auto it = lay.index.find(Key{int(p), t, a});
        if (it == lay.index.end()) throw DomainError("family leaves the totalization layout");
        v[it->second] = x;
      }
  return v;
}

}  // namespace

std::vector<Scalar> Totalization::coordinates(int degree, const TotFamily& w) const {
  auto it = layouts.find(degree);
  if (it == layouts.end()) {
    if (is_zero(w)) return {};
    throw DomainError("no totalization basis in this degree");
  }
  const Layout& lay = it->second;
  std::vector<Scalar> v = flatten(lay, w);
  std::vector<Scalar> coords;
  std::vector<Scalar> rebuilt(v.size());
  for (size_t i = 0; i < lay.free_cols.size(); ++i) {
    coords.push_back(v[lay.free_cols[i]]);
    for (size_t j = 0; j < v.size(); ++j) rebuilt[j] += lay.vectors[i][j] * coords.back();
  }
  if (rebuilt != v) throw DomainError("family is not a compatible family of this degree");
  return coords;
}

TotFamily Totalization::family(int degree, const std::vector<Scalar>& coords) const {
  const std::vector<TotFamily>& b = basis.at(degree);
  if (coords.size() != b.size()) throw UsageError("coordinate count mismatch");
  TotFamily out = scaled(b.at(0), Scalar(0));
  for (size_t i = 0; i < b.size(); ++i)
    if (!coords[i].is_zero()) out = out + scaled(b[i], coords[i]);
  return out;
}

Totalization totalize(const CosimplicialDgla& c, int level_cap, int poly_degree,
                      bool with_brackets) {
  if (level_cap < 0 || level_cap > c.cap()) throw UsageError("level cap out of range");
  if (poly_degree < 0) throw UsageError("polynomial degree bound must be nonnegative");
  Totalization T;
  T.level_cap = level_cap;
  T.poly_degree = poly_degree;
  int kmin = c.level(0)->lo(), kmax = c.level(0)->hi();
  for (int p = 0; p <= level_cap; ++p) {
    kmin = std::min(kmin, c.level(p)->lo());
    kmax = std::max(kmax, c.level(p)->hi() + p);
  }
  std::map<std::pair<FormTerm, std::vector<int>>, PolyForm> pb_cache;
  auto pulled = [&](int p, const FormTerm& t, const std::vector<int>& f) -> const PolyForm& {
    auto key = std::make_pair(t, f);
    auto it = pb_cache.find(key);
    if (it != pb_cache.end()) return it->second;
    PolyForm alpha(p);
    alpha.add(t, Scalar(1));
    return pb_cache.emplace(key, pullback(alpha, f)).first->second;
  };

  std::vector<int> dims;
  for (int k = kmin; k <= kmax; ++k) {
    Totalization::Layout lay;
    for (int p = 0; p <= level_cap; ++p) {
      const DglaPresentation& L = *c.level(p);
      for (int f = 0; f <= p; ++f) {
        int q = k - f;
        if (q < L.lo() || q > L.hi() || L.dim(q) == 0) continue;
        for (const FormTerm& t : form_terms(p, f, poly_degree))
          for (int a = L.offset(q); a < L.offset(q) + L.dim(q); ++a) {
            lay.index[Key{p, t, a}] = int(lay.unknowns.size());
            lay.unknowns.emplace_back(p, t, a);
          }
      }
    }
    // constraint rows keyed by (kind, level, index, term, basis)
    std::map<std::tuple<int, int, int, FormTerm, int>, int> rows;
    std::vector<std::vector<std::pair<int, Scalar>>> cols(lay.unknowns.size());
    auto put = [&](size_t col, int kind, int lvl, int idx, const FormTerm& t, int a,
                   const Scalar& x) {
      auto key = std::make_tuple(kind, lvl, idx, t, a);
      auto it = rows.find(key);
      int r = it == rows.end() ? rows.emplace(key, int(rows.size())).first->second : it->second;
      cols[col].emplace_back(r, x);
    };
    for (size_t u = 0; u < lay.unknowns.size(); ++u) {
      const auto& [p, t, a] = lay.unknowns[u];
      // face constraints with this level on top
      for (int i = 0; p >= 1 && i <= p; ++i)
        for (const auto& [s, x] : pulled(p, t, coface_map(p, i)).terms()) put(u, 0, p, i, s, a, x);
      // face constraints with this level below
      for (int i = 0; p + 1 <= level_cap && i <= p + 1; ++i)
        for (const auto& [r, x] : c.coface(p, i).cols[a]) put(u, 0, p + 1, i, t, r, -x);
      // degeneracy constraints with this level below
      for (int i = 0; p + 1 <= level_cap && i <= p; ++i)
        for (const auto& [s, x] : pulled(p, t, codegeneracy_map(p, i)).terms())
          put(u, 1, p, i, s, a, x);
      // degeneracy constraints with this level on top
      for (int i = 0; p >= 1 && i <= p - 1; ++i)
        for (const auto& [r, x] : c.codegeneracy(p - 1, i).cols[a]) put(u, 1, p - 1, i, t, r, -x);
    }
    Matrix m(int(rows.size()), int(lay.unknowns.size()));
    for (size_t u = 0; u < cols.size(); ++u)
      for (const auto& [r, x] : cols[u]) m(r, int(u)) += x;
    std::vector<int> piv = rref(m);
    std::vector<char> is_piv(lay.unknowns.size(), 0);
    for (int pc : piv) is_piv[pc] = 1;
    for (int fc = 0; fc < int(lay.unknowns.size()); ++fc) {
      if (is_piv[fc]) continue;
      std::vector<Scalar> v(lay.unknowns.size());
      v[fc] = Scalar(1);
      for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(int(r), fc);
      lay.free_cols.push_back(fc);
      lay.vectors.push_back(std::move(v));
    }
    std::vector<TotFamily>& fam = T.basis[k];
    for (const auto& v : lay.vectors) {
      TotFamily w = tot_zero(c, level_cap);
      for (size_t u = 0; u < v.size(); ++u) {
        if (v[u].is_zero()) continue;
        const auto& [p, t, a] = lay.unknowns[u];
        w.levels[p].add(t, a, v[u]);
      }
      fam.push_back(std::move(w));
    }
    dims.push_back(int(fam.size()));
    T.layouts[k] = std::move(lay);
  }

  auto P = std::make_shared<DglaPresentation>("Tot(" + c.name() + ")", kmin, dims);
  auto global = [&](int k, int i) { return P->offset(k) + i; };
  for (int k = kmin; k <= kmax; ++k) {
    const auto& fam = T.basis[k];
    for (size_t i = 0; i < fam.size(); ++i) {
      TotFamily d = tot_differential(fam[i]);
      if (is_zero(d)) continue;
      if (k == kmax) throw DomainError("differential leaves the totalization range");
      std::vector<Scalar> co = T.coordinates(k + 1, d);
      for (size_t j = 0; j < co.size(); ++j)
        if (!co[j].is_zero()) P->add_differential(global(k, int(i)), global(k + 1, int(j)), co[j]);
    }
  }
  if (with_brackets) {
    for (int k = kmin; k <= kmax; ++k)
      for (int l = k; l <= kmax; ++l) {
        if (k + l < kmin || k + l > kmax) continue;
        const auto& A = T.basis[k];
        const auto& B = T.basis[l];
        for (size_t i = 0; i < A.size(); ++i)
          for (size_t j = (k == l ? i : 0); j < B.size(); ++j) {
            TotFamily br = tot_bracket(A[i], B[j]);
            if (is_zero(br)) continue;
            int pd = -1;
            for (const auto& lv : br.levels) pd = std::max(pd, lv.poly_degree());
            if (pd > poly_degree) {
              T.dropped_brackets++;
              continue;
            }
            std::vector<Scalar> co = T.coordinates(k + l, br);
            int a = global(k, int(i)), b = global(l, int(j));
            for (size_t n = 0; n < co.size(); ++n) {
              if (co[n].is_zero()) continue;
              if (a == b) P->add_bracket(a, b, global(k + l, int(n)), co[n]);
              else P->add_bracket_antisym(a, b, global(k + l, int(n)), co[n]);
            }
          }
      }
    T.brackets_computed = true;
  }
  T.presentation = P;
  return T;
}

int tot_closed_dimension(const Totalization& t, int degree) {
  const DglaPresentation& P = *t.presentation;
  if (degree < P.lo() || degree > P.hi()) return 0;
  if (degree == P.hi()) return P.dim(degree);
  return P.dim(degree) - rank(P.differential_block(degree));
}

TotFamily whitney(const CosimplicialDgla& c, const TotalCochain& x, int order, int level_cap) {
  TotFamily out = tot_zero(c, level_cap);
  for (const auto& [k, elem] : x) {
    if (k > level_cap) continue;
    if (elem.dgla_ptr() != c.level(k)) throw UsageError("cochain component on the wrong level");
    GradedElement coeff = elem;
    for (int p = k; p <= level_cap; ++p) {
      // increasing (k+1)-subsets of [p]
      std::vector<int> I(k + 1);
      for (int i = 0; i <= k; ++i) I[i] = i;
      while (true) {
        GradedElement xi = face_embed(c, coeff, p, I);
        std::map<int, Scalar> vals;
        for (int a = 0; a < xi.dgla().total_dim(); ++a) {
          const Scalar& v = xi[a].coeff(order);
          if (!v.is_zero()) vals[a] = v;
        }
        if (!vals.empty()) {
          PolyForm w(p);
          for (int j = 0; j <= k; ++j) {
            PolyForm term = PolyForm::coordinate(p, I[j]) * Scalar(j % 2 ? -1 : 1);
            for (int m = 0; m <= k; ++m)
              if (m != j) term = wedge(term, PolyForm::dcoordinate(p, I[m]));
            w += term;
          }
          w *= Scalar(factorial(k));
          out.levels[p].add(tensor(w, c.level(p), vals));
        }
        int pos = k;
        while (pos >= 0 && I[pos] == p - k + pos) --pos;
        if (pos < 0) break;
        ++I[pos];
        for (int m = pos + 1; m <= k; ++m) I[m] = I[m - 1] + 1;
      }
    }
  }
  return out;
}

TotFamily whitney_mc_defect(const CosimplicialDgla& c, const TotalCochain& x, int order,
                            int level_cap) {
  TotFamily out = tot_differential(whitney(c, x, order, level_cap));
  for (int i = 1; i < order; ++i) {
    TotFamily a = whitney(c, x, i, level_cap);
    TotFamily b = whitney(c, x, order - i, level_cap);
    out = out + scaled(tot_bracket(a, b), Scalar(Rational(1, 2)));
  }
  return out;
}

std::vector<std::vector<Scalar>> normalized_basis(const CosimplicialDgla& c, int n, int p) {
  const DglaPresentation& L = *c.level(n);
  if (p < L.lo() || p > L.hi()) return {};
  int off = L.offset(p), dim = L.dim(p);
  std::vector<std::vector<Scalar>> out;
  if (n == 0) {
    for (int a = 0; a < dim; ++a) {
      std::vector<Scalar> v(L.total_dim());
      v[off + a] = Scalar(1);
      out.push_back(std::move(v));
    }
    return out;
  }
  int below = c.level(n - 1)->total_dim();
  Matrix m(n * below, dim);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < dim; ++a)
      for (const auto& [r, x] : c.codegeneracy(n - 1, j).cols[off + a]) m(j * below + r, a) += x;
  for (const auto& k : kernel_basis(m)) {
    std::vector<Scalar> v(L.total_dim());
    for (int a = 0; a < dim; ++a) v[off + a] = k[a];
    out.push_back(std::move(v));
  }
  return out;
}

GradedElement random_normalized_element(Rng& rng, const CosimplicialDgla& c, int n, int p,
                                        int trunc) {
  GradedElement x(c.level(n), trunc);
  for (const auto& v : normalized_basis(c, n, p)) {
    if (rng.coin(1, 3)) continue;
    Series s = rng.series(trunc);
    for (size_t a = 0; a < v.size(); ++a)
      if (!v[a].is_zero()) x[int(a)] += s * v[a];
  }
  return x;
}

}  // namespace defq
