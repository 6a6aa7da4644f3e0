// Maurer-Cartan elements, gauge action and the Deligne 2-groupoid.
#ifndef DEFQ_DELIGNE_HPP
#define DEFQ_DELIGNE_HPP

#include "defq/dgla.hpp"

namespace defq {

// d lambda + 1/2 [lambda, lambda]
GradedElement mc_defect(const GradedElement& lambda);
// degree 1, in the maximal ideal, zero defect
bool is_maurer_cartan(const GradedElement& lambda);

// L with one extra degree-1 vector delta, [delta, x] = dx, [delta, delta] = 0
DglaPtr semidirect_extension(const DglaPtr& L);

// exp(X) . lambda, computed as exp(ad X)(delta + lambda) - delta in the extension
GradedElement gauge_apply(const GradedElement& X, const GradedElement& lambda);

// exp(X): source -> target
struct GaugeArrow {
  GradedElement X;
  GradedElement source;
  GradedElement target;

  static GaugeArrow make(const GradedElement& X, const GradedElement& source);
  static GaugeArrow identity(const GradedElement& mc);
  GaugeArrow inverse() const;
  bool same_as(const GaugeArrow& o) const { return X == o.X && source == o.source; }
};

// g after h; h.target must equal g.source
GaugeArrow compose_gauge(const GaugeArrow& g, const GaugeArrow& h);

// d t + [mu, t]
GradedElement twisted_differential(const GradedElement& mu, const GradedElement& t);
// [a, d b + [mu, b]] on degree -1
GradedElement twisted_bracket(const GradedElement& mu, const GradedElement& a,
                              const GradedElement& b);
GradedElement twisted_bch(const GradedElement& mu, const GradedElement& a,
                          const GradedElement& b);

// t : from -> to, meaning exp(X_from) = exp(d t + [mu, t]) exp(X_to)
struct TwoArrow {
  GradedElement t;
  GaugeArrow from;
  GaugeArrow to;

  static TwoArrow identity(const GaugeArrow& g);
};

bool two_morphism_verify(const GradedElement& t, const GaugeArrow& from, const GaugeArrow& to);
// from c1.from to c2.to; requires c1.to == c2.from
TwoArrow compose_two_vertical(const TwoArrow& c1, const TwoArrow& c2);
// outer : G1 -> G2 (lambda -> mu), inner : H1 -> H2 (kappa -> lambda);
// result G1 H1 -> G2 H2
TwoArrow compose_two_horizontal(const TwoArrow& outer, const TwoArrow& inner);

}  // namespace defq

#endif
