#include "defq/cosimplicial.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace defq {

namespace {

int parity(long e) { return (e % 2 == 0) ? 1 : -1; }

std::vector<int> drop(const std::vector<int>& s, int i) {
  std::vector<int> out(s);
  out.erase(out.begin() + i);
  return out;
}

std::vector<int> repeat(const std::vector<int>& s, int j) {
  std::vector<int> out(s);
  out.insert(out.begin() + j, s[j]);
  return out;
}

// sum duplicate rows and drop zeros, so maps can be compared entrywise
LinearMap normalized(const LinearMap& f) {
  LinearMap g(f.src_dim, f.dst_dim);
  for (int j = 0; j < f.src_dim; ++j) {
    std::map<int, Scalar> acc;
    for (const auto& [r, c] : f.cols[j]) acc[r] += c;
    for (const auto& [r, c] : acc)
      if (!c.is_zero()) g.cols[j].emplace_back(r, c);
  }
  return g;
}

bool same_map(const LinearMap& a, const LinearMap& b) {
  if (a.src_dim != b.src_dim || a.dst_dim != b.dst_dim) return false;
  LinearMap x = normalized(a), y = normalized(b);
  return x.cols == y.cols;
}

LinearMap sum_maps(const LinearMap& a, const LinearMap& b, const Scalar& sb) {
  LinearMap out = a;
  for (int j = 0; j < b.src_dim; ++j)
    for (const auto& [r, c] : b.cols[j]) out.add(r, j, c * sb);
  return out;
}

LinearMap differential_map(const DglaPresentation& L) {
  LinearMap d(L.total_dim(), L.total_dim());
  for (int a = 0; a < L.total_dim(); ++a)
    for (const auto& [k, c] : L.d_of(a)) d.add(k, a, c);
  return d;
}

using Sparse = std::map<int, Scalar>;

Sparse image(const LinearMap& f, const Sparse& v) {
  Sparse out;
  for (const auto& [j, c] : v)
    for (const auto& [r, x] : f.cols[j]) out[r] += c * x;
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

Sparse sparse_bracket(const DglaPresentation& L, const Sparse& x, const Sparse& y) {
  Sparse out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y)
      for (const auto& [k, c] : L.bracket_of(a, b)) out[k] += ca * cb * c;
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// checks that f: A -> B commutes with d and brackets; empty report on success
ValidationReport check_morphism(const DglaPresentation& A, const DglaPresentation& B,
                                const LinearMap& f, bool brackets, const std::string& what) {
  ValidationReport rep;
  for (int a = 0; a < A.total_dim(); ++a)
    for (const auto& [r, c] : f.cols[a])
      if (!c.is_zero() && A.degree_of(a) != B.degree_of(r)) {
        rep.ok = false;
        rep.axiom = what + ": degree";
        rep.witness = {a};
        return rep;
      }
  if (!same_map(f.after(differential_map(A)), differential_map(B).after(f))) {
    rep.ok = false;
    rep.axiom = what + ": differential";
    return rep;
  }
  if (!brackets) return rep;
  for (int a = 0; a < A.total_dim(); ++a) {
    Sparse fa = image(f, Sparse{{a, Scalar(1)}});
    for (int b = 0; b < A.total_dim(); ++b) {
      Sparse fb = image(f, Sparse{{b, Scalar(1)}});
      Sparse lhs;
      for (const auto& [k, c] : A.bracket_of(a, b)) lhs[k] += c;
      lhs = image(f, lhs);
      if (lhs != sparse_bracket(B, fa, fb)) {
        rep.ok = false;
        rep.axiom = what + ": bracket";
        rep.witness = {a, b};
        return rep;
      }
    }
  }
  return rep;
}

// Functions on a simplicial set whose n-simplices are sequences of length
// n+1, faces dropping an entry and degeneracies repeating one. The fiber
// depends on the first entry; dropping the first entry transports along
// `restrict_first(new_first, old_first)`.
CosimplicialDgla sequence_model(
    const std::string& name, int cap, const std::function<std::vector<std::vector<int>>(int)>& seqs,
    const std::function<DglaPtr(int)>& fiber,
    const std::function<LinearMap(int, int)>& restrict_first) {
  std::vector<std::vector<std::vector<int>>> items(cap + 1);
  std::vector<std::map<std::vector<int>, int>> ids(cap + 1);
  std::vector<DirectSum> sums;
  std::vector<DglaPtr> levels;
  for (int n = 0; n <= cap; ++n) {
    items[n] = seqs(n);
    std::vector<DglaPtr> parts;
    for (size_t k = 0; k < items[n].size(); ++k) {
      ids[n][items[n][k]] = int(k);
      parts.push_back(fiber(items[n][k][0]));
    }
    sums.push_back(direct_sum(name + "^" + std::to_string(n), parts));
    levels.push_back(sums.back().sum);
  }
  std::vector<std::vector<LinearMap>> cof(cap), cod(cap);
  for (int n = 0; n < cap; ++n) {
    for (int i = 0; i <= n + 1; ++i) {
      LinearMap f(levels[n]->total_dim(), levels[n + 1]->total_dim());
      for (size_t t = 0; t < items[n + 1].size(); ++t) {
        const auto& T = items[n + 1][t];
        std::vector<int> F = drop(T, i);
        int src = ids[n].at(F);
        const auto& emb_src = sums[n].embed[src];
        const auto& emb_dst = sums[n + 1].embed[t];
        if (F[0] == T[0]) {
          for (size_t b = 0; b < emb_src.size(); ++b) f.add(emb_dst[b], emb_src[b], Scalar(1));
        } else {
          LinearMap r = restrict_first(T[0], F[0]);
          for (int b = 0; b < r.src_dim; ++b)
            for (const auto& [row, c] : r.cols[b]) f.add(emb_dst[row], emb_src[b], c);
        }
      }
      cof[n].push_back(std::move(f));
    }
    for (int j = 0; j <= n; ++j) {
      LinearMap s(levels[n + 1]->total_dim(), levels[n]->total_dim());
      for (size_t t = 0; t < items[n].size(); ++t) {
        int src = ids[n + 1].at(repeat(items[n][t], j));
        const auto& emb_src = sums[n + 1].embed[src];
        const auto& emb_dst = sums[n].embed[t];
        for (size_t b = 0; b < emb_src.size(); ++b) s.add(emb_dst[b], emb_src[b], Scalar(1));
      }
      cod[n].push_back(std::move(s));
    }
  }
  return CosimplicialDgla(name, std::move(levels), std::move(cof), std::move(cod));
}

}  // namespace

bool is_subset(const Simplex& s, const Simplex& t) {
  return std::includes(t.begin(), t.end(), s.begin(), s.end());
}

Nerve::Nerve(int num_indices, const std::vector<Simplex>& generators) : n_(num_indices) {
  std::set<Simplex> all;
  for (Simplex g : generators) {
    std::sort(g.begin(), g.end());
    if (g.empty() || std::adjacent_find(g.begin(), g.end()) != g.end())
      throw UsageError("simplex must be a nonempty set of distinct indices");
    for (int v : g)
      if (v < 0 || v >= n_) throw UsageError("simplex vertex out of range");
    if (g.size() > 20) throw UsageError("simplex too large");
    for (unsigned mask = 1; mask < (1u << g.size()); ++mask) {
      Simplex s;
      for (size_t i = 0; i < g.size(); ++i)
        if (mask >> i & 1u) s.push_back(g[i]);
      all.insert(s);
    }
  }
  simplices_.assign(all.begin(), all.end());
  std::stable_sort(simplices_.begin(), simplices_.end(),
                   [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
  for (size_t i = 0; i < simplices_.size(); ++i) ids_[simplices_[i]] = int(i);
}

Nerve Nerve::full(int num_indices) {
  Simplex all;
  for (int i = 0; i < num_indices; ++i) all.push_back(i);
  return Nerve(num_indices, {all});
}

int Nerve::index_of(const Simplex& s) const {
  auto it = ids_.find(s);
  return it == ids_.end() ? -1 : it->second;
}

int Nerve::dimension() const {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, int(s.size()) - 1);
  return d;
}

std::vector<std::vector<int>> Nerve::chains(int p) const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void()> rec = [&]() {
    if (int(cur.size()) == p + 1) {
      out.push_back(cur);
      return;
    }
    for (int id = 0; id < size(); ++id)
      if (cur.empty() || is_subset(simplices_[cur.back()], simplices_[id])) {
        cur.push_back(id);
        rec();
        cur.pop_back();
      }
  };
  rec();
  return out;
}

LinearMap SimplicialDglaSheaf::r(int s, int t) const {
  if (s == t) return LinearMap::identity(fiber[s]->total_dim());
  auto it = restriction.find({s, t});
  if (it == restriction.end()) throw UsageError("no restriction between these simplices");
  return it->second;
}

SimplicialDglaSheaf SimplicialDglaSheaf::constant(const Nerve& nerve, const DglaPtr& L) {
  SimplicialDglaSheaf sh;
  sh.nerve = nerve;
  sh.fiber.assign(nerve.size(), L);
  for (int s = 0; s < nerve.size(); ++s)
    for (int t = 0; t < nerve.size(); ++t)
      if (s != t && is_subset(nerve.simplex(s), nerve.simplex(t)))
        sh.restriction[{s, t}] = LinearMap::identity(L->total_dim());
  return sh;
}

ValidationReport validate_sheaf(const SimplicialDglaSheaf& sh) {
  const Nerve& N = sh.nerve;
  ValidationReport rep;
  if (int(sh.fiber.size()) != N.size()) {
    rep.ok = false;
    rep.axiom = "fiber count";
    return rep;
  }
  for (int s = 0; s < N.size(); ++s)
    for (int t = 0; t < N.size(); ++t) {
      if (s == t || !is_subset(N.simplex(s), N.simplex(t))) continue;
      const LinearMap& f = sh.restriction.at({s, t});
      if (f.src_dim != sh.fiber[t]->total_dim() || f.dst_dim != sh.fiber[s]->total_dim()) {
        rep.ok = false;
        rep.axiom = "restriction shape";
        rep.witness = {s, t};
        return rep;
      }
      ValidationReport m = check_morphism(*sh.fiber[t], *sh.fiber[s], f, true, "restriction");
      if (!m.ok) {
        m.witness = {s, t};
        return m;
      }
      for (int u = 0; u < N.size(); ++u)
        if (u != t && is_subset(N.simplex(t), N.simplex(u)) &&
            !same_map(f.after(sh.r(t, u)), sh.r(s, u))) {
          rep.ok = false;
          rep.axiom = "composition";
          rep.witness = {s, t, u};
          return rep;
        }
    }
  return rep;
}

CosimplicialDgla::CosimplicialDgla(std::string name, std::vector<DglaPtr> levels,
                                   std::vector<std::vector<LinearMap>> cofaces,
                                   std::vector<std::vector<LinearMap>> codegeneracies)
    : name_(std::move(name)),
      levels_(std::move(levels)),
      cofaces_(std::move(cofaces)),
      codegen_(std::move(codegeneracies)) {
  if (levels_.empty()) throw UsageError("cosimplicial DGLA needs at least one level");
  int cap = int(levels_.size()) - 1;
  if (int(cofaces_.size()) != cap || int(codegen_.size()) != cap)
    throw UsageError("coface/codegeneracy count does not match the levels");
  for (int n = 0; n < cap; ++n) {
    if (int(cofaces_[n].size()) != n + 2 || int(codegen_[n].size()) != n + 1)
      throw UsageError("wrong number of structure maps at level " + std::to_string(n));
    for (const auto& f : cofaces_[n])
      if (f.src_dim != levels_[n]->total_dim() || f.dst_dim != levels_[n + 1]->total_dim())
        throw UsageError("coface shape mismatch");
    for (const auto& s : codegen_[n])
      if (s.src_dim != levels_[n + 1]->total_dim() || s.dst_dim != levels_[n]->total_dim())
        throw UsageError("codegeneracy shape mismatch");
  }
}

GradedElement apply_map(const LinearMap& f, const GradedElement& x, const DglaPtr& target) {
  if (f.src_dim != x.dgla().total_dim() || f.dst_dim != target->total_dim())
    throw UsageError("linear map shape mismatch");
  GradedElement out(target, x.trunc());
  for (int j = 0; j < f.src_dim; ++j) {
    if (x[j].is_zero()) continue;
    for (const auto& [r, c] : f.cols[j]) out[r] += x[j] * c;
  }
  return out;
}

GradedElement coface(const CosimplicialDgla& c, int n, int i, const GradedElement& x) {
  if (x.dgla_ptr() != c.level(n)) throw UsageError("element is not in this level");
  return apply_map(c.coface(n, i), x, c.level(n + 1));
}

GradedElement codegeneracy(const CosimplicialDgla& c, int n, int i, const GradedElement& x) {
  if (x.dgla_ptr() != c.level(n + 1)) throw UsageError("element is not in this level");
  return apply_map(c.codegeneracy(n, i), x, c.level(n));
}

GradedElement face_embed(const CosimplicialDgla& c, const GradedElement& x, int n,
                         const std::vector<int>& vertices) {
  int m = int(vertices.size()) - 1;
  if (m < 0 || !std::is_sorted(vertices.begin(), vertices.end()) ||
      std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end() ||
      vertices.front() < 0 || vertices.back() > n)
    throw UsageError("face vertices must increase within [0, n]");
  GradedElement y = x;
  int cur = m;
  for (int j = 0; j <= n; ++j) {
    if (std::binary_search(vertices.begin(), vertices.end(), j)) continue;
    y = coface(c, cur, j, y);
    ++cur;
  }
  return y;
}

GradedElement coboundary(const CosimplicialDgla& c, int n, const GradedElement& x) {
  GradedElement out(c.level(n + 1), x.trunc());
  for (int i = 0; i <= n + 1; ++i) {
    GradedElement y = coface(c, n, i, x);
    if (i % 2) out -= y;
    else out += y;
  }
  return out;
}

ValidationReport validate_cosimplicial(const CosimplicialDgla& c, int bracket_level) {
  ValidationReport rep;
  auto fail = [&](std::string axiom, std::vector<int> w) {
    rep.ok = false;
    rep.axiom = std::move(axiom);
    rep.witness = std::move(w);
    return rep;
  };
  int cap = c.cap();
  // d^j d^i = d^i d^{j-1}, i < j, L^n -> L^{n+2}
  for (int n = 0; n + 2 <= cap; ++n)
    for (int j = 1; j <= n + 2; ++j)
      for (int i = 0; i < j; ++i)
        if (!same_map(c.coface(n + 1, j).after(c.coface(n, i)),
                      c.coface(n + 1, i).after(c.coface(n, j - 1))))
          return fail("coface-coface", {n, i, j});
  // s^j s^i = s^i s^{j+1}, i <= j, L^{n+2} -> L^n
  for (int n = 0; n + 2 <= cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!same_map(c.codegeneracy(n, j).after(c.codegeneracy(n + 1, i)),
                      c.codegeneracy(n, i).after(c.codegeneracy(n + 1, j + 1))))
          return fail("codegeneracy-codegeneracy", {n, i, j});
  // s^j d^i on L^n -> L^{n+1} -> L^n
  for (int n = 0; n + 1 <= cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        LinearMap lhs = c.codegeneracy(n, j).after(c.coface(n, i));
        LinearMap rhs;
        if (i == j || i == j + 1) {
          rhs = LinearMap::identity(c.level(n)->total_dim());
        } else if (i < j) {
          rhs = c.coface(n - 1, i).after(c.codegeneracy(n - 1, j - 1));
        } else {
          rhs = c.coface(n - 1, i - 1).after(c.codegeneracy(n - 1, j));
        }
        if (!same_map(lhs, rhs)) return fail("codegeneracy-coface", {n, i, j});
      }
  // coboundary squares to zero
  for (int n = 0; n + 2 <= cap; ++n) {
    LinearMap b0(c.level(n)->total_dim(), c.level(n + 1)->total_dim());
    LinearMap b1(c.level(n + 1)->total_dim(), c.level(n + 2)->total_dim());
    for (int i = 0; i <= n + 1; ++i) b0 = sum_maps(b0, c.coface(n, i), Scalar(parity(i)));
    for (int i = 0; i <= n + 2; ++i) b1 = sum_maps(b1, c.coface(n + 1, i), Scalar(parity(i)));
    if (!normalized(b1.after(b0)).cols.empty() &&
        !same_map(b1.after(b0), LinearMap(b0.src_dim, b1.dst_dim)))
      return fail("coboundary squared", {n});
  }
  // structure maps are DGLA morphisms
  for (int n = 0; n < cap; ++n) {
    bool br = n + 1 <= bracket_level;
    for (int i = 0; i <= n + 1; ++i) {
      ValidationReport m = check_morphism(*c.level(n), *c.level(n + 1), c.coface(n, i), br, "coface");
      if (!m.ok) {
        m.witness.insert(m.witness.begin(), {n, i});
        return m;
      }
    }
    for (int j = 0; j <= n; ++j) {
      ValidationReport m =
          check_morphism(*c.level(n + 1), *c.level(n), c.codegeneracy(n, j), br, "codegeneracy");
      if (!m.ok) {
        m.witness.insert(m.witness.begin(), {n, j});
        return m;
      }
    }
  }
  return rep;
}

DirectSum direct_sum(const std::string& name, const std::vector<DglaPtr>& parts) {
  if (parts.empty()) throw UsageError("direct sum of nothing");
  int lo = parts[0]->lo(), hi = parts[0]->hi();
  for (const auto& p : parts) {
    lo = std::min(lo, p->lo());
    hi = std::max(hi, p->hi());
  }
  std::vector<int> dims(hi - lo + 1, 0);
  // position of part j's degree-p block inside the degree-p block of the sum
  std::vector<std::vector<int>> start(parts.size(), std::vector<int>(hi - lo + 1, 0));
  for (int p = lo; p <= hi; ++p)
    for (size_t j = 0; j < parts.size(); ++j) {
      start[j][p - lo] = dims[p - lo];
      if (p >= parts[j]->lo() && p <= parts[j]->hi()) dims[p - lo] += parts[j]->dim(p);
    }
  auto S = std::make_shared<DglaPresentation>(name, lo, dims);
  DirectSum out;
  out.embed.resize(parts.size());
  for (size_t j = 0; j < parts.size(); ++j) {
    const DglaPresentation& P = *parts[j];
    auto& e = out.embed[j];
    e.resize(P.total_dim());
    for (int a = 0; a < P.total_dim(); ++a) {
      int p = P.degree_of(a);
      e[a] = S->offset(p) + start[j][p - lo] + (a - P.offset(p));
    }
    for (int a = 0; a < P.total_dim(); ++a) {
      for (const auto& [k, c] : P.d_of(a)) S->add_differential(e[a], e[k], c);
      for (int b : P.partners(a))
        for (const auto& [k, c] : P.bracket_of(a, b)) S->add_bracket(e[a], e[b], e[k], c);
    }
  }
  out.sum = S;
  return out;
}

CosimplicialDgla tuple_cech_model(const DglaPtr& L, int num_indices, int cap) {
  if (num_indices < 1 || cap < 0) throw UsageError("tuple model needs indices and a cap");
  auto seqs = [num_indices](int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n + 1, 0);
    while (true) {
      out.push_back(cur);
      int k = n;
      while (k >= 0 && ++cur[k] == num_indices) cur[k--] = 0;
      if (k < 0) break;
    }
    return out;
  };
  int dim = L->total_dim();
  return sequence_model(
      "tuples(" + L->name() + "," + std::to_string(num_indices) + ")", cap, seqs,
      [&L](int) { return L; }, [dim](int, int) { return LinearMap::identity(dim); });
}

CosimplicialDgla constant_cosimplicial(const DglaPtr& L, int cap) {
  std::vector<DglaPtr> levels(cap + 1, L);
  std::vector<std::vector<LinearMap>> cof(cap), cod(cap);
  int d = L->total_dim();
  for (int n = 0; n < cap; ++n) {
    cof[n].assign(n + 2, LinearMap::identity(d));
    cod[n].assign(n + 1, LinearMap::identity(d));
  }
  return CosimplicialDgla("constant(" + L->name() + ")", levels, cof, cod);
}

CosimplicialDgla cech_complex(const SimplicialDglaSheaf& sheaf, int cap) {
  const Nerve& N = sheaf.nerve;
  return sequence_model(
      "cech", cap, [&N](int n) { return N.chains(n); },
      [&sheaf](int s) { return sheaf.fiber.at(s); },
      [&sheaf](int s, int t) { return sheaf.r(s, t); });
}

TotalCochain total_differential(const CosimplicialDgla& c, const TotalCochain& x) {
  TotalCochain out;
  auto add = [&](int n, const GradedElement& v) {
    auto it = out.find(n);
    if (it == out.end()) out.emplace(n, v);
    else it->second += v;
  };
  for (const auto& [n, v] : x) {
    GradedElement dv = differential(v);
    if (n % 2) dv *= Scalar(-1);
    add(n, dv);
    if (n + 1 <= c.cap()) add(n + 1, coboundary(c, n, v));
  }
  return out;
}

bool is_zero(const TotalCochain& x) {
  for (const auto& [n, v] : x)
    if (!v.is_zero()) return false;
  return true;
}

}  // namespace defq
