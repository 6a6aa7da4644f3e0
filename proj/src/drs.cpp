#include "defq/drs.hpp"

#include <algorithm>

#include "defq/scalars.hpp"

namespace defq {

namespace {

PolyForm single(int p, const FormTerm& t) {
  PolyForm w(p);
  w.add(t, Scalar(1));
  return w;
}

int sign(int e) { return e % 2 == 0 ? 1 : -1; }

// positions of the vertices of s inside t
std::vector<int> positions(const Simplex& s, const Simplex& t) {
  std::vector<int> out;
  for (int v : s) {
    auto it = std::find(t.begin(), t.end(), v);
    if (it == t.end()) throw UsageError("not a face");
    out.push_back(int(it - t.begin()));
  }
  return out;
}

std::vector<Series> apply_matrix(const Matrix& m, const std::vector<Series>& v, int trunc) {
  std::vector<Series> out(m.rows(), Series(trunc));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero() && !v[c].is_zero()) out[r] += v[c] * m(r, c);
  return out;
}

int top_simplex(const Nerve& N) {
  int top = N.size() - 1;
  for (int s = 0; s < N.size(); ++s)
    if (!is_subset(N.simplex(s), N.simplex(top)))
      throw UsageError("the nerve is not a single simplex with its faces");
  return top;
}

}  // namespace

void DrsForm::add(const FormTerm& t, const HochschildCochain& c, const Scalar& s) {
  if (c.is_zero() || s.is_zero()) return;
  if (c.dim() != alg_dim) throw UsageError("cochain on the wrong algebra");
  auto key = std::make_pair(t, c.arity());
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c * s);
    return;
  }
  it->second += c * s;
  if (it->second.is_zero()) terms.erase(it);
}

void DrsForm::add(const DrsForm& o, const Scalar& s) {
  if (o.p != p || o.alg_dim != alg_dim) throw UsageError("forms on different simplices");
  for (const auto& [k, c] : o.terms) add(k.first, c, s);
}

DrsForm drs_tensor(const PolyForm& alpha, const HochschildCochain& d) {
  DrsForm out(alpha.simplex_dim(), d.dim());
  for (const auto& [t, c] : alpha.terms()) out.add(t, d, c);
  return out;
}

DrsSetting DrsSetting::constant(const Nerve& nerve, const AlgebraPresentation& a) {
  DrsSetting S;
  S.nerve = nerve;
  S.algebra.assign(nerve.size(), a);
  for (int t = 0; t < nerve.size(); ++t) {
    S.curvature.emplace_back(int(nerve.simplex(t).size()) - 1, a.dim());
    for (int s = 0; s < nerve.size(); ++s)
      if (s != t && is_subset(nerve.simplex(s), nerve.simplex(t))) {
        S.inclusion[{s, t}] = Matrix::identity(a.dim());
        S.projection[{s, t}] = Matrix::identity(a.dim());
      }
  }
  return S;
}

std::optional<HochschildCochain> restrict_cochain(const HochschildCochain& d, const Matrix& iota,
                                                  const Matrix& proj, bool require_inside) {
  int big = iota.rows(), small = iota.cols(), k = d.arity(), trunc = d.trunc();
  if (d.dim() != big || proj.rows() != small || proj.cols() != big)
    throw UsageError("inclusion does not match the cochain");
  std::vector<std::vector<std::pair<int, Scalar>>> col(small);
  for (int b = 0; b < small; ++b)
    for (int r = 0; r < big; ++r)
      if (!iota(r, b).is_zero()) col[b].emplace_back(r, iota(r, b));
  HochschildCochain out(small, k, trunc);
  for (size_t in = 0; in < out.num_inputs(); ++in) {
    std::vector<int> args = out.args_of(in);
    std::vector<Series> value(big, Series(trunc));
    // multilinear expansion over the image columns
    std::vector<size_t> pick(k, 0);
    bool empty = false;
    for (int j = 0; j < k; ++j) empty = empty || col[args[j]].empty();
    while (!empty) {
      Scalar coef(1);
      std::vector<int> rows(k);
      for (int j = 0; j < k; ++j) {
        rows[j] = col[args[j]][pick[j]].first;
        coef *= col[args[j]][pick[j]].second;
      }
      size_t src = d.index_of(rows);
      for (int o = 0; o < big; ++o)
        if (!d.at(src, o).is_zero()) value[o] += d.at(src, o) * coef;
      int j = k - 1;
      while (j >= 0 && ++pick[j] == col[args[j]].size()) pick[j--] = 0;
      if (j < 0) break;
    }
    std::vector<Series> back = apply_matrix(proj, value, trunc);
    if (require_inside && k > 0 && apply_matrix(iota, back, trunc) != value) return std::nullopt;
    for (int o = 0; o < small; ++o) out.at(in, o) = back[o];
  }
  return out;
}

std::optional<DrsForm> restrict_form(const DrsSetting& S, int s, int t, const DrsForm& w,
                                     bool require_inside) {
  const Simplex& fs = S.nerve.simplex(s);
  const Simplex& ft = S.nerve.simplex(t);
  if (w.p != int(ft.size()) - 1) throw UsageError("form lives on another simplex");
  if (s == t) return w;
  std::vector<int> pos = positions(fs, ft);
  DrsForm out(int(fs.size()) - 1, S.algebra[s].dim());
  for (const auto& [key, c] : w.terms) {
    std::optional<HochschildCochain> rc =
        restrict_cochain(c, S.iota(s, t), S.proj(s, t), require_inside);
    if (!rc) return std::nullopt;
    PolyForm alpha = pullback(single(w.p, key.first), pos);
    for (const auto& [term, coef] : alpha.terms()) out.add(term, *rc, coef);
  }
  return out;
}

ValidationReport drs_validate(const DrsSetting& S, const DrsCollection& w) {
  ValidationReport rep;
  if (int(w.size()) != S.nerve.size()) throw UsageError("one form per simplex expected");
  for (int t = 0; t < S.nerve.size(); ++t)
    for (int s = 0; s < S.nerve.size(); ++s) {
      if (s == t || !is_subset(S.nerve.simplex(s), S.nerve.simplex(t))) continue;
      std::optional<DrsForm> r = restrict_form(S, s, t, w[t]);
      if (!r || !(*r == w[s])) {
        rep.ok = false;
        rep.axiom = r ? "face compatibility" : "subalgebra";
        rep.witness = {s, t};
        return rep;
      }
    }
  return rep;
}

ValidationReport drs_validate_curvature(const DrsSetting& S) {
  ValidationReport rep;
  auto fail = [&](const char* what, std::vector<int> wit) {
    rep.ok = false;
    rep.axiom = what;
    rep.witness = std::move(wit);
    return rep;
  };
  for (int s = 0; s < S.nerve.size(); ++s) {
    const DrsForm& R = S.curvature[s];
    const AlgebraPresentation& a = S.algebra[s];
    for (const auto& [key, c] : R.terms) {
      if (key.first.form_degree() != 2 || key.second != 0) return fail("curvature shape", {s});
      // centrality of the value
      for (int b = 0; b < a.dim(); ++b) {
        std::vector<Scalar> e(a.dim()), v(a.dim());
        e[b] = Scalar(1);
        for (int o = 0; o < a.dim(); ++o) v[o] = c.at(size_t(0), o).coeff(0);
        if (a.multiply(v, e) != a.multiply(e, v)) return fail("curvature: central", {s});
      }
    }
    // closedness, term by term in the cochain coordinates
    DrsForm dR(R.p, a.dim());
    for (const auto& [key, c] : R.terms) {
      PolyForm dalpha = sullivan_d(single(R.p, key.first));
      for (const auto& [term, coef] : dalpha.terms()) dR.add(term, c, coef);
    }
    if (!dR.is_zero()) return fail("curvature: closed", {s});
  }
  DrsCollection R = S.curvature;
  ValidationReport comp = drs_validate(S, R);
  if (!comp.ok) return fail("curvature: compatibility", comp.witness);
  return rep;
}

DrsForm drs_differential(const AlgebraPresentation& a, const DrsForm& R, const DrsForm& w) {
  DrsForm out(w.p, w.alg_dim);
  for (const auto& [key, c] : w.terms) {
    const FormTerm& t = key.first;
    int f = t.form_degree(), k = key.second;
    PolyForm alpha = single(w.p, t);
    PolyForm da = sullivan_d(alpha);
    for (const auto& [term, coef] : da.terms()) out.add(term, c, coef);
    out.add(t, hochschild_delta(a, c), Scalar(sign(f)));
    if (k == 0) continue;
    for (const auto& [rkey, r] : R.terms) {
      PolyForm ra = wedge(single(w.p, rkey.first), alpha);
      if (ra.is_zero()) continue;
      HochschildCochain ic = contract_i_R(r, c);
      for (const auto& [term, coef] : ra.terms()) out.add(term, ic, coef * Scalar(sign(f + k)));
    }
  }
  return out;
}

DrsCollection drs_differential(const DrsSetting& S, const DrsCollection& w) {
  DrsCollection out;
  for (int s = 0; s < S.nerve.size(); ++s)
    out.push_back(drs_differential(S.algebra[s], S.curvature[s], w[s]));
  return out;
}

DrsCollection drs_from_top(const DrsSetting& S, int top, const DrsForm& w) {
  DrsCollection out;
  for (int s = 0; s < S.nerve.size(); ++s) {
    if (!is_subset(S.nerve.simplex(s), S.nerve.simplex(top)))
      throw UsageError("simplex outside the top simplex");
    std::optional<DrsForm> r = restrict_form(S, s, top, w, false);
    out.push_back(*r);
  }
  return out;
}

DrsCollection random_drs_collection(Rng& rng, const DrsSetting& S, int max_arity, int max_poly) {
  int top = top_simplex(S.nerve);
  int p = int(S.nerve.simplex(top).size()) - 1;
  int dim = S.algebra[top].dim();
  DrsForm w(p, dim);
  for (int f = 0; f <= p; ++f)
    for (const auto& t : form_terms(p, f, max_poly))
      if (rng.coin(1, 4)) w.add(t, random_cochain(rng, dim, rng.uniform(0, max_arity), 0, 0, 30));
  return drs_from_top(S, top, w);
}

std::vector<DrsForm> random_exact_curvature(Rng& rng, const DrsSetting& S,
                                            const std::vector<std::vector<Scalar>>& central,
                                            int max_poly) {
  int top = top_simplex(S.nerve);
  int p = int(S.nerve.simplex(top).size()) - 1;
  const AlgebraPresentation& a = S.algebra[top];
  std::vector<Series> value(a.dim(), Series(0));
  for (const auto& z : central) {
    Scalar c = rng.scalar();
    for (int i = 0; i < a.dim(); ++i) value[i] += Series(0, z[i] * c);
  }
  PolyForm beta(p);
  for (const auto& t : form_terms(p, 1, max_poly))
    if (rng.coin()) beta.add(t, rng.scalar());
  DrsForm R = drs_tensor(sullivan_d(beta), element_cochain(value));
  return drs_from_top(S, top, R);
}

}  // namespace defq
