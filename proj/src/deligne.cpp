#include "defq/deligne.hpp"

#include <map>
#include <mutex>

namespace defq {

GradedElement mc_defect(const GradedElement& lambda) {
  GradedElement r = differential(lambda);
  GradedElement q = bracket(lambda, lambda);
  q *= Scalar(frac(1, 2));
  return r += q;
}

bool is_maurer_cartan(const GradedElement& lambda) {
  return lambda.is_homogeneous(1) && lambda.in_maximal_ideal() && mc_defect(lambda).is_zero();
}

namespace {

struct Extension {
  DglaPtr base;
  DglaPtr ext;
  std::vector<int> index;  // base index -> extension index
  int delta = 0;
};

const Extension& extension_of(const DglaPtr& L) {
  static std::mutex mu;
  static std::map<const DglaPresentation*, Extension> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(L.get());
  if (it != cache.end() && it->second.base == L) return it->second;

  int lo = std::min(L->lo(), 1), hi = std::max(L->hi(), 1);
  std::vector<int> dims;
  for (int p = lo; p <= hi; ++p) dims.push_back(L->dim(p) + (p == 1 ? 1 : 0));
  auto E = std::make_shared<DglaPresentation>(L->name() + "+delta", lo, dims);
  Extension ex;
  ex.base = L;
  ex.index.resize(L->total_dim());
  for (int a = 0; a < L->total_dim(); ++a) {
    int p = L->degree_of(a);
    ex.index[a] = E->offset(p) + (a - L->offset(p));
  }
  ex.delta = E->offset(1) + L->dim(1);
  for (int a = 0; a < L->total_dim(); ++a) {
    for (const auto& [k, c] : L->d_of(a)) {
      E->add_differential(ex.index[a], ex.index[k], c);
      // [delta, e_a] = d e_a and the graded-antisymmetric partner
      E->add_bracket_antisym(ex.delta, ex.index[a], ex.index[k], c);
    }
    for (int b : L->partners(a))
      for (const auto& [k, c] : L->bracket_of(a, b))
        E->add_bracket(ex.index[a], ex.index[b], ex.index[k], c);
  }
  ex.ext = E;
  return cache[L.get()] = std::move(ex);
}

GradedElement lift(const Extension& ex, const GradedElement& x) {
  GradedElement y(ex.ext, x.trunc());
  for (int a = 0; a < x.dgla().total_dim(); ++a) y[ex.index[a]] = x[a];
  return y;
}

GradedElement lower(const Extension& ex, const GradedElement& y) {
  GradedElement x(ex.base, y.trunc());
  for (int a = 0; a < ex.base->total_dim(); ++a) x[a] = y[ex.index[a]];
  return x;
}

}  // namespace

DglaPtr semidirect_extension(const DglaPtr& L) { return extension_of(L).ext; }

GradedElement gauge_apply(const GradedElement& X, const GradedElement& lambda) {
  if (!X.is_homogeneous(0) || !X.in_maximal_ideal())
    throw DomainError("gauge parameter must be a degree-0 element of the maximal ideal");
  if (!lambda.is_homogeneous(1)) throw UsageError("gauge action is on degree-1 elements");
  if (X.dgla_ptr().get() != lambda.dgla_ptr().get()) throw UsageError("gauge across DGLAs");
  const Extension& ex = extension_of(X.dgla_ptr());
  GradedElement v = lift(ex, lambda);
  v[ex.delta] = Series(lambda.trunc(), Scalar(1));
  GradedElement w = exp_ad(lift(ex, X), v);
  // [X, delta] = -dX has no delta component, so the delta coefficient stays 1
  return lower(ex, w);
}

GaugeArrow GaugeArrow::make(const GradedElement& X, const GradedElement& source) {
  return GaugeArrow{X, source, gauge_apply(X, source)};
}

GaugeArrow GaugeArrow::identity(const GradedElement& mc) {
  return GaugeArrow{GradedElement(mc.dgla_ptr(), mc.trunc()), mc, mc};
}

GaugeArrow GaugeArrow::inverse() const { return GaugeArrow{-X, target, source}; }

GaugeArrow compose_gauge(const GaugeArrow& g, const GaugeArrow& h) {
  if (h.target != g.source) throw UsageError("gauge arrows are not composable");
  return GaugeArrow{bch(g.X, h.X), h.source, g.target};
}

GradedElement twisted_differential(const GradedElement& mu, const GradedElement& t) {
  return differential(t) + bracket(mu, t);
}

GradedElement twisted_bracket(const GradedElement& mu, const GradedElement& a,
                              const GradedElement& b) {
  return bracket(a, twisted_differential(mu, b));
}

GradedElement twisted_bch(const GradedElement& mu, const GradedElement& a,
                          const GradedElement& b) {
  if (!a.in_maximal_ideal() || !b.in_maximal_ideal())
    throw DomainError("BCH needs arguments in the maximal ideal");
  std::function<GradedElement(const GradedElement&, const GradedElement&)> br =
      [&mu](const GradedElement& x, const GradedElement& y) { return twisted_bracket(mu, x, y); };
  return bch_with<GradedElement>(a, b, a.trunc(), br);
}

TwoArrow TwoArrow::identity(const GaugeArrow& g) {
  return TwoArrow{GradedElement(g.X.dgla_ptr(), g.X.trunc()), g, g};
}

bool two_morphism_verify(const GradedElement& t, const GaugeArrow& from, const GaugeArrow& to) {
  if (!t.is_homogeneous(-1) || !t.in_maximal_ideal()) return false;
  if (from.source != to.source || from.target != to.target) return false;
  return from.X == bch(twisted_differential(from.target, t), to.X);
}

TwoArrow compose_two_vertical(const TwoArrow& c1, const TwoArrow& c2) {
  if (!c1.to.same_as(c2.from)) throw UsageError("two-arrows are not vertically composable");
  return TwoArrow{twisted_bch(c1.to.target, c1.t, c2.t), c1.from, c2.to};
}

TwoArrow compose_two_horizontal(const TwoArrow& outer, const TwoArrow& inner) {
  if (inner.from.target != outer.from.source)
    throw UsageError("two-arrows are not horizontally composable");
  const GradedElement& mu = outer.from.target;
  GradedElement moved = exp_ad(outer.to.X, inner.t);
  return TwoArrow{twisted_bch(mu, outer.t, moved), compose_gauge(outer.from, inner.from),
                  compose_gauge(outer.to, inner.to)};
}

}  // namespace defq
