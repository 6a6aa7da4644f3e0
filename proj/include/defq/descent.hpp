// Descent data for the Deligne two-groupoid of a cosimplicial DGLA, their
// isomorphisms and two-isomorphisms, and the deviation cochains measuring
// the failure of each defining condition.
//
// Faces: for a cochain x on level m, x_{i0..im} on level n is face_embed.
// A datum is (lambda, g, t) with G = exp(g), c = exp(t); the conditions are
//   d lambda + 1/2 [lambda, lambda] = 0                    (level 0)
//   exp(g) . lambda_1 = lambda_0                           (level 1)
//   exp(g_02) = exp(d t + [lambda_0, t]) exp(g_01) exp(g_12)  (level 2)
//   ((G_01(c_123)^-1 c_013^-1) c_023) c_012 = 1            (level 3)
// with the level-3 product taken in the group of degree -1 elements under
// the lambda_0-twisted bracket.
#ifndef DEFQ_DESCENT_HPP
#define DEFQ_DESCENT_HPP

#include <string>
#include <vector>

#include "defq/cosimplicial.hpp"
#include "defq/models.hpp"

namespace defq {

struct DescentDatum {
  GradedElement lambda;  // level 0, degree 1
  GradedElement g;       // level 1, degree 0
  GradedElement t;       // level 2, degree -1
  bool certified = false;

  static DescentDatum trivial(const CosimplicialDgla& c, int trunc);
};

// (h, s): D -> D' with h on level 0 (degree 0) and s on level 1 (degree -1):
//   exp(h) . lambda = lambda'
//   exp(h_0) exp(g) = exp(d s + [lambda'_0, s]) exp(g') exp(h_1)
//   c' = b_02^-1 H_0(c) b_01 G'_01(b_12)
struct DescentIso {
  GradedElement h;
  GradedElement s;
  static DescentIso identity(const CosimplicialDgla& c, int trunc);
};

// r on level 0 (degree -1) from (h, s) to (h~, s~), both D -> D':
//   exp(h~) = exp(d r + [lambda', r]) exp(h)
//   s~ = (r_0 s) G'(r_1)^-1
struct DescentTwoIso {
  GradedElement r;
};

// The raw deviations, all orders. tau = log T.
struct DescentDeviation {
  GradedElement R;    // level 0, degree 2
  GradedElement Z;    // level 1, degree 1
  GradedElement tau;  // level 2, degree 0
  GradedElement Phi;  // level 3, degree -1
};
struct IsoDeviation {
  GradedElement C;    // level 0, degree 1
  GradedElement S;    // log S, level 1, degree 0
  GradedElement Psi;  // level 2, degree -1
};
struct TwoIsoDeviation {
  GradedElement P;      // log P, level 0, degree 0
  GradedElement Omega;  // level 1, degree -1
};

DescentDeviation descent_deviation(const CosimplicialDgla& c, const DescentDatum& D);
IsoDeviation iso_deviation(const CosimplicialDgla& c, const DescentDatum& from,
                           const DescentDatum& to, const DescentIso& iso);
TwoIsoDeviation two_iso_deviation(const CosimplicialDgla& c, const DescentDatum& from,
                                  const DescentDatum& to, const DescentIso& iso,
                                  const DescentIso& other, const DescentTwoIso& r);

struct ConditionReport {
  std::string name;
  bool ok = true;
  int first_failing_order = -1;  // -1 when the condition holds
};
struct DescentReport {
  bool ok = true;
  int first_failing_order = -1;
  std::vector<ConditionReport> conditions;
};

// mc, gauge, two-morphism, tetrahedron
DescentReport descent_verify(const CosimplicialDgla& c, const DescentDatum& D);
// gauge, one-morphism, two-morphism
DescentReport iso_verify(const CosimplicialDgla& c, const DescentDatum& from,
                         const DescentDatum& to, const DescentIso& iso);
// gauge, two-morphism
DescentReport two_iso_verify(const CosimplicialDgla& c, const DescentDatum& from,
                             const DescentDatum& to, const DescentIso& iso,
                             const DescentIso& other, const DescentTwoIso& r);

// Leading deviation at hbar^order, packaged with signs so that it is closed
// under D = coboundary + (-1)^n d:
//   descent   (R, Z, -tau, -Phi)  on levels 0..3
//   iso       (C, log S, Psi)     on levels 0..2
//   two-iso   (log P, Omega)      on levels 0..1
// The precondition is that everything vanishes below `order`; otherwise
// `precondition_ok` is false and `first_failing_order` is the true one.
struct DeviationResult {
  bool precondition_ok = false;
  int first_failing_order = -1;
  int order = 0;
  TotalCochain cochain;  // hbar^order part only
  bool closed = false;
};

DeviationResult deviation_cocycle(const CosimplicialDgla& c, const DescentDatum& D, int order);
DeviationResult iso_deviation_cocycle(const CosimplicialDgla& c, const DescentDatum& from,
                                      const DescentDatum& to, const DescentIso& iso, int order);
DeviationResult two_iso_deviation_cocycle(const CosimplicialDgla& c, const DescentDatum& from,
                                          const DescentDatum& to, const DescentIso& iso,
                                          const DescentIso& other, const DescentTwoIso& r,
                                          int order);

// The datum D' for which iso : D -> D' holds exactly.
DescentDatum transport_datum(const CosimplicialDgla& c, const DescentDatum& D,
                             const DescentIso& iso);
// The iso (h~, s~) for which r : iso -> (h~, s~) holds exactly; `to` is the
// common target.
DescentIso transport_iso(const CosimplicialDgla& c, const DescentDatum& to,
                         const DescentIso& iso, const DescentTwoIso& r);

// hbar^k coefficient of x, as an element of the same truncation
GradedElement order_part(const GradedElement& x, int k);
// first hbar power with a nonzero coefficient, -1 if zero
int first_order(const GradedElement& x);

// Random test data. All coefficients lie in hbar^1..hbar^trunc.
DescentIso random_iso(Rng& rng, const CosimplicialDgla& c, int trunc, int lo = 1);
DescentDatum random_datum(Rng& rng, const CosimplicialDgla& c, int trunc, int lo = 1);
// exact datum obtained by transporting the trivial one along a random iso
DescentDatum random_exact_datum(Rng& rng, const CosimplicialDgla& c, int trunc);

}  // namespace defq

#endif
