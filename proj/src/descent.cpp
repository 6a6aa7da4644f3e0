#include "defq/descent.hpp"

#include <algorithm>

#include "defq/deligne.hpp"

namespace defq {

namespace {

void require(const CosimplicialDgla& c, const GradedElement& x, int level, int degree,
             const char* what) {
  if (level > c.cap()) throw UsageError(std::string(what) + ": cosimplicial cap too small");
  if (x.dgla_ptr() != c.level(level))
    throw UsageError(std::string(what) + " must live on level " + std::to_string(level));
  if (!x.is_homogeneous(degree))
    throw UsageError(std::string(what) + " must have degree " + std::to_string(degree));
  if (!x.in_maximal_ideal())
    throw DomainError(std::string(what) + " must lie in the maximal ideal");
}

void require_datum(const CosimplicialDgla& c, const DescentDatum& D) {
  require(c, D.lambda, 0, 1, "lambda");
  require(c, D.g, 1, 0, "g");
  require(c, D.t, 2, -1, "t");
}

void require_iso(const CosimplicialDgla& c, const DescentIso& iso) {
  require(c, iso.h, 0, 0, "h");
  require(c, iso.s, 1, -1, "s");
}

GradedElement face(const CosimplicialDgla& c, const GradedElement& x, int n,
                   std::vector<int> vertices) {
  return face_embed(c, x, n, vertices);
}

ConditionReport condition(const std::string& name, const GradedElement& x) {
  ConditionReport r;
  r.name = name;
  r.first_failing_order = first_order(x);
  r.ok = r.first_failing_order < 0;
  return r;
}

DescentReport collect(std::vector<ConditionReport> conds) {
  DescentReport rep;
  for (const auto& k : conds)
    if (!k.ok) {
      rep.ok = false;
      if (rep.first_failing_order < 0 || k.first_failing_order < rep.first_failing_order)
        rep.first_failing_order = k.first_failing_order;
    }
  rep.conditions = std::move(conds);
  return rep;
}

// shared tail of the three deviation_cocycle variants
DeviationResult package(const CosimplicialDgla& c, const std::vector<GradedElement>& parts,
                        const std::vector<int>& signs, int order) {
  int top = int(parts.size()) - 1;
  if (c.cap() < top + 1)
    throw UsageError("closure check needs cosimplicial level " + std::to_string(top + 1));
  if (order < 1 || order > parts[0].trunc())
    throw UsageError("order must lie in 1..trunc");
  DeviationResult res;
  res.order = order;
  for (const auto& p : parts) {
    int k = first_order(p);
    if (k >= 0 && (res.first_failing_order < 0 || k < res.first_failing_order))
      res.first_failing_order = k;
  }
  res.precondition_ok = res.first_failing_order < 0 || res.first_failing_order >= order;
  if (!res.precondition_ok) return res;
  for (int n = 0; n <= top; ++n) res.cochain.emplace(n, order_part(parts[n], order) * Scalar(signs[n]));
  res.closed = is_zero(total_differential(c, res.cochain));
  return res;
}

}  // namespace

DescentDatum DescentDatum::trivial(const CosimplicialDgla& c, int trunc) {
  return {GradedElement(c.level(0), trunc), GradedElement(c.level(1), trunc),
          GradedElement(c.level(2), trunc), true};
}

DescentIso DescentIso::identity(const CosimplicialDgla& c, int trunc) {
  return {GradedElement(c.level(0), trunc), GradedElement(c.level(1), trunc)};
}

GradedElement order_part(const GradedElement& x, int k) {
  GradedElement out(x.dgla_ptr(), x.trunc());
  for (int i = 0; i < x.dgla().total_dim(); ++i) {
    const Scalar& v = x[i].coeff(k);
    if (!v.is_zero()) out[i] = Series::monomial(x.trunc(), k, v);
  }
  return out;
}

int first_order(const GradedElement& x) { return x.is_zero() ? -1 : x.valuation(); }

DescentDeviation descent_deviation(const CosimplicialDgla& c, const DescentDatum& D) {
  require_datum(c, D);
  require(c, GradedElement(c.level(3), D.t.trunc()), 3, -1, "level 3");
  DescentDeviation dev;
  dev.R = mc_defect(D.lambda);

  dev.Z = gauge_apply(D.g, face(c, D.lambda, 1, {1})) - face(c, D.lambda, 1, {0});

  GradedElement l0 = face(c, D.lambda, 2, {0});
  GradedElement gamma = twisted_differential(l0, D.t);
  GradedElement g01 = face(c, D.g, 2, {0, 1});
  GradedElement g12 = face(c, D.g, 2, {1, 2});
  GradedElement g02 = face(c, D.g, 2, {0, 2});
  dev.tau = bch(g02, -bch(gamma, bch(g01, g12)));

  GradedElement m = face(c, D.lambda, 3, {0});
  GradedElement G01 = face(c, D.g, 3, {0, 1});
  GradedElement c123 = face(c, D.t, 3, {1, 2, 3});
  GradedElement c023 = face(c, D.t, 3, {0, 2, 3});
  GradedElement c013 = face(c, D.t, 3, {0, 1, 3});
  GradedElement c012 = face(c, D.t, 3, {0, 1, 2});
  GradedElement left = twisted_bch(m, -exp_ad(G01, c123), -c013);
  dev.Phi = twisted_bch(m, twisted_bch(m, left, c023), c012);
  return dev;
}

IsoDeviation iso_deviation(const CosimplicialDgla& c, const DescentDatum& from,
                           const DescentDatum& to, const DescentIso& iso) {
  require_datum(c, from);
  require_datum(c, to);
  require_iso(c, iso);
  IsoDeviation dev;
  dev.C = gauge_apply(iso.h, from.lambda) - to.lambda;

  GradedElement beta = twisted_differential(face(c, to.lambda, 1, {0}), iso.s);
  GradedElement h0 = face(c, iso.h, 1, {0});
  GradedElement h1 = face(c, iso.h, 1, {1});
  dev.S = bch(bch(h0, from.g), -bch(beta, bch(to.g, h1)));

  GradedElement m = face(c, to.lambda, 2, {0});
  GradedElement b01 = face(c, iso.s, 2, {0, 1});
  GradedElement b12 = face(c, iso.s, 2, {1, 2});
  GradedElement b02 = face(c, iso.s, 2, {0, 2});
  GradedElement moved = exp_ad(face(c, iso.h, 2, {0}), from.t);
  GradedElement last = exp_ad(face(c, to.g, 2, {0, 1}), b12);
  GradedElement acc = twisted_bch(m, -to.t, -b02);
  acc = twisted_bch(m, acc, moved);
  acc = twisted_bch(m, acc, b01);
  dev.Psi = twisted_bch(m, acc, last);
  return dev;
}

TwoIsoDeviation two_iso_deviation(const CosimplicialDgla& c, const DescentDatum& from,
                                  const DescentDatum& to, const DescentIso& iso,
                                  const DescentIso& other, const DescentTwoIso& r) {
  require_datum(c, from);
  require_datum(c, to);
  require_iso(c, iso);
  require_iso(c, other);
  require(c, r.r, 0, -1, "r");
  TwoIsoDeviation dev;
  GradedElement alpha = twisted_differential(to.lambda, r.r);
  dev.P = bch(other.h, -bch(alpha, iso.h));

  GradedElement m = face(c, to.lambda, 1, {0});
  GradedElement a0 = face(c, r.r, 1, {0});
  GradedElement a1 = exp_ad(to.g, face(c, r.r, 1, {1}));
  GradedElement acc = twisted_bch(m, a0, iso.s);
  acc = twisted_bch(m, acc, -a1);
  dev.Omega = twisted_bch(m, acc, -other.s);
  return dev;
}

DescentReport descent_verify(const CosimplicialDgla& c, const DescentDatum& D) {
  DescentDeviation dev = descent_deviation(c, D);
  return collect({condition("maurer-cartan", dev.R), condition("gauge", dev.Z),
                  condition("two-morphism", dev.tau), condition("tetrahedron", dev.Phi)});
}

DescentReport iso_verify(const CosimplicialDgla& c, const DescentDatum& from,
                         const DescentDatum& to, const DescentIso& iso) {
  IsoDeviation dev = iso_deviation(c, from, to, iso);
  return collect({condition("gauge", dev.C), condition("one-morphism", dev.S),
                  condition("two-morphism", dev.Psi)});
}

DescentReport two_iso_verify(const CosimplicialDgla& c, const DescentDatum& from,
                             const DescentDatum& to, const DescentIso& iso,
                             const DescentIso& other, const DescentTwoIso& r) {
  TwoIsoDeviation dev = two_iso_deviation(c, from, to, iso, other, r);
  return collect({condition("gauge", dev.P), condition("one-morphism", dev.Omega)});
}

DeviationResult deviation_cocycle(const CosimplicialDgla& c, const DescentDatum& D, int order) {
  DescentDeviation dev = descent_deviation(c, D);
  return package(c, {dev.R, dev.Z, dev.tau, dev.Phi}, {1, 1, -1, -1}, order);
}

DeviationResult iso_deviation_cocycle(const CosimplicialDgla& c, const DescentDatum& from,
                                      const DescentDatum& to, const DescentIso& iso, int order) {
  IsoDeviation dev = iso_deviation(c, from, to, iso);
  return package(c, {dev.C, dev.S, dev.Psi}, {1, 1, 1}, order);
}

DeviationResult two_iso_deviation_cocycle(const CosimplicialDgla& c, const DescentDatum& from,
                                          const DescentDatum& to, const DescentIso& iso,
                                          const DescentIso& other, const DescentTwoIso& r,
                                          int order) {
  TwoIsoDeviation dev = two_iso_deviation(c, from, to, iso, other, r);
  return package(c, {dev.P, dev.Omega}, {1, 1}, order);
}

DescentDatum transport_datum(const CosimplicialDgla& c, const DescentDatum& D,
                             const DescentIso& iso) {
  require_datum(c, D);
  require_iso(c, iso);
  DescentDatum out;
  out.lambda = gauge_apply(iso.h, D.lambda);

  GradedElement beta = twisted_differential(face(c, out.lambda, 1, {0}), iso.s);
  GradedElement h0 = face(c, iso.h, 1, {0});
  GradedElement h1 = face(c, iso.h, 1, {1});
  out.g = bch(bch(bch(-beta, h0), D.g), -h1);

  GradedElement m = face(c, out.lambda, 2, {0});
  GradedElement b01 = face(c, iso.s, 2, {0, 1});
  GradedElement b12 = face(c, iso.s, 2, {1, 2});
  GradedElement b02 = face(c, iso.s, 2, {0, 2});
  GradedElement acc = twisted_bch(m, -b02, exp_ad(face(c, iso.h, 2, {0}), D.t));
  acc = twisted_bch(m, acc, b01);
  out.t = twisted_bch(m, acc, exp_ad(face(c, out.g, 2, {0, 1}), b12));
  out.certified = D.certified;
  return out;
}

DescentIso transport_iso(const CosimplicialDgla& c, const DescentDatum& to,
                         const DescentIso& iso, const DescentTwoIso& r) {
  require_datum(c, to);
  require_iso(c, iso);
  require(c, r.r, 0, -1, "r");
  DescentIso out;
  out.h = bch(twisted_differential(to.lambda, r.r), iso.h);
  GradedElement m = face(c, to.lambda, 1, {0});
  GradedElement a0 = face(c, r.r, 1, {0});
  GradedElement a1 = exp_ad(to.g, face(c, r.r, 1, {1}));
  out.s = twisted_bch(m, twisted_bch(m, a0, iso.s), -a1);
  return out;
}

DescentIso random_iso(Rng& rng, const CosimplicialDgla& c, int trunc, int lo) {
  return {random_element(rng, c.level(0), 0, trunc, lo), random_element(rng, c.level(1), -1, trunc, lo)};
}

DescentDatum random_datum(Rng& rng, const CosimplicialDgla& c, int trunc, int lo) {
  DescentDatum D;
  D.lambda = random_element(rng, c.level(0), 1, trunc, lo);
  D.g = random_element(rng, c.level(1), 0, trunc, lo);
  D.t = random_element(rng, c.level(2), -1, trunc, lo);
  return D;
}

DescentDatum random_exact_datum(Rng& rng, const CosimplicialDgla& c, int trunc) {
  DescentDatum D = transport_datum(c, DescentDatum::trivial(c, trunc), random_iso(rng, c, trunc));
  D.certified = true;
  return D;
}

}  // namespace defq
