#include "defq/sweeps.hpp"

#include <functional>
#include <sstream>

#include "defq/deligne.hpp"
#include "defq/descent.hpp"
#include "defq/drs.hpp"
#include "defq/fedosov.hpp"
#include "defq/gerbe.hpp"
#include "defq/hochschild.hpp"
#include "defq/models.hpp"
#include "defq/sullivan.hpp"

namespace defq {

bool SweepReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok()) return false;
  return true;
}

void SweepReport::record(const std::string& check, bool pass, const std::string& what) {
  SweepCheck* c = nullptr;
  for (auto& x : checks)
    if (x.name == check) c = &x;
  if (!c) {
    checks.push_back(SweepCheck{check, 0, 0, ""});
    c = &checks.back();
  }
  ++c->samples;
  if (pass) ++c->passed;
  else if (c->first_failure.empty()) c->first_failure = what.empty() ? "sample " + std::to_string(c->samples - 1) : what;
}

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "}";
  return os.str();
}

const CosimplicialDgla& abelian_cech() {
  static const CosimplicialDgla c = tuple_cech_model(make_cdga_model(), 2, 4);
  return c;
}

const CosimplicialDgla& heisenberg_cech() {
  static const CosimplicialDgla c = tuple_cech_model(make_heisenberg_model(), 2, 4);
  return c;
}

GradedElement truncate_above(const GradedElement& x, int n) {
  GradedElement out(x.dgla_ptr(), x.trunc());
  for (int k = 1; k <= n; ++k) out += order_part(x, k);
  return out;
}

bool all_zero(const DrsCollection& w) {
  for (const auto& f : w)
    if (!f.is_zero()) return false;
  return true;
}

bool twisted_associative_everywhere(const StackDatum& S) {
  for (int s = 0; s < S.nerve.size(); ++s)
    if (!twisted_matrix_build(S, s).is_associative()) return false;
  return true;
}

// multiply one c_ijk with i, j, k distinct by a non-trivial unit
StackDatum perturb_unit(Rng& rng, StackDatum S) {
  std::vector<Triple> keys;
  for (const auto& [k, v] : S.c)
    if (k[0] != k[1] && k[1] != k[2] && k[0] != k[2]) keys.push_back(k);
  Triple k = keys[rng.uniform(0, int(keys.size()) - 1)];
  const AlgebraPresentation& a = S.algebra[k[0]];
  Element u = unit_of(a);
  u[0] += Scalar(rng.uniform(1, 3));
  S.c[k] = a.multiply(S.c[k], u);
  return S;
}

// b_ij = c_iji^-1 for i < j
StackIso round_trip_iso(const StackDatum& S) {
  StackIso iso = identity_iso(S);
  for (auto& [k, b] : iso.b)
    if (k[0] < k[1]) b = *inverse_element(S.algebra[k[0]], S.c.at({k[0], k[1], k[0]}));
  return iso;
}

Matrix antisym2(const Scalar& v) {
  Matrix m(2, 2);
  m(0, 1) = v;
  m(1, 0) = -v;
  return m;
}

PolyForm random_form(Rng& rng, int p, int max_deg) {
  PolyForm w(p);
  for (int f = 0; f <= p; ++f)
    for (const auto& t : form_terms(p, f, max_deg))
      if (rng.coin(1, 3)) w.add(t, rng.scalar());
  return w;
}

}  // namespace

SweepReport sweep_dgla_fixtures() {
  SweepReport rep{"dgla fixtures", {}};
  AlgebraPresentation a3 = truncated_polynomial_algebra(3);
  for (const DglaPtr& L : {make_abelian_dgla(-1, {2, 3, 1}), make_sl2(),
                           hochschild_dgla(a3, 2, 0)}) {
    ValidationReport r = validate_dgla(*L);
    rep.record("reference passes", r.ok, L->name() + ": " + r.axiom + " " + join(r.witness));
  }
  ValidationReport d2 = validate_dgla(*make_broken_d_squared());
  rep.record("corrupted fails with witness", !d2.ok && d2.axiom == "d_squared" && !d2.witness.empty(),
             "broken differential accepted");
  ValidationReport jac = validate_dgla(*make_broken_jacobi());
  rep.record("corrupted fails with witness", !jac.ok && jac.axiom == "jacobi" && jac.witness.size() == 3,
             "broken bracket accepted");
  return rep;
}

SweepReport sweep_hochschild(std::uint64_t seed, int tables) {
  SweepReport rep{"hochschild", {}};
  Rng rng(seed);
  for (const AlgebraPresentation& a : {truncated_polynomial_algebra(3), matrix_algebra(2)}) {
    ValidationReport r = validate_hochschild(a, 2);
    rep.record("axioms", r.ok, a.name() + ": " + r.axiom + " " + join(r.witness));
    for (int arity = 0; arity <= 2; ++arity) {
      HochschildCochain d = random_cochain(rng, a.dim(), arity, 2, 0);
      rep.record("delta squared", hochschild_delta(a, hochschild_delta(a, d)).is_zero(),
                 a.name() + " arity " + std::to_string(arity));
    }
  }
  int assoc = 0;
  for (int t = 0; t < tables; ++t) {
    int d = rng.uniform(1, 3);
    AlgebraPresentation a = t % 2 ? random_algebra_table(rng, d) : random_associative_algebra(rng, d);
    HochschildCochain m = multiplication_cochain(a, 0);
    bool zero = gerstenhaber(m, m).is_zero();
    bool is_assoc = a.is_associative();
    assoc += is_assoc;
    rep.record("[m,m] = 0 iff associative", zero == is_assoc, "table " + std::to_string(t));
  }
  rep.record("both classes sampled", assoc > 0 && assoc < tables, "one class missing");
  return rep;
}

SweepReport sweep_mc_associativity(std::uint64_t seed, int samples) {
  SweepReport rep{"mc vs associativity", {}};
  Rng rng(seed);
  AlgebraPresentation a = truncated_polynomial_algebra(3);
  DglaPtr L = hochschild_dgla(a, 2);
  int mc = 0;
  for (int s = 0; s < samples; ++s) {
    HochschildCochain lambda(3, 2, 1);
    if (s % 2 == 0) {
      lambda = hochschild_delta(a, random_cochain(rng, 3, 1, 1, 1));
      // occasionally spoil one entry
      if (rng.coin(1, 4)) lambda.flat()[rng.uniform(0, 26)].add_to_coeff(1, Scalar(1));
    } else {
      lambda = random_cochain(rng, 3, 2, 1, 1, 20);
    }
    GradedElement x = cochain_to_element(L, lambda);
    bool zero = mc_defect(x).is_zero();
    bool assoc = deformed_table_is_associative(a, lambda);
    mc += zero;
    rep.record("defect zero iff associative", zero == assoc, "sample " + std::to_string(s));
  }
  rep.record("both classes sampled", mc > 0 && mc < samples, "one class missing");
  return rep;
}

SweepReport sweep_gauge(std::uint64_t seed, int samples) {
  SweepReport rep{"gauge", {}};
  Rng rng(seed);
  DglaPtr L = make_sl2_exterior();
  for (int s = 0; s < samples; ++s) {
    int n = rng.uniform(1, 3);
    GradedElement lambda(L, n);
    Series t = rng.series(n, 0);
    for (int i = 0; i < 3; ++i) {
      lambda[3 + i] = rng.series(n, 1);
      lambda[6 + i] = lambda[3 + i] * t;
    }
    GradedElement X = random_element(rng, L, 0, n);
    GradedElement Y = random_element(rng, L, 0, n);
    GradedElement mu = gauge_apply(Y, lambda);
    rep.record("image is Maurer-Cartan", is_maurer_cartan(lambda) && is_maurer_cartan(mu));
    rep.record("group action", gauge_apply(bch(X, Y), lambda) == gauge_apply(X, mu));
  }
  return rep;
}

SweepReport sweep_descent(std::uint64_t seed, int samples) {
  SweepReport rep{"descent", {}};
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const CosimplicialDgla& c = s % 2 ? heisenberg_cech() : abelian_cech();
    DescentDatum D = random_exact_datum(rng, c, 2);
    rep.record("exact data verify", descent_verify(c, D).ok, "sample " + std::to_string(s));
    GradedElement eps = order_part(random_element(rng, c.level(2), -1, 2, 1, 1), 1);
    D.t += eps;
    // to first order the perturbation shows up as d eps and its coboundary
    bool visible = !differential(eps).is_zero() || !coboundary(c, 2, eps).is_zero();
    DescentReport bad = descent_verify(c, D);
    rep.record("perturbed data fail at order 1",
               bad.ok == !visible && (bad.ok || bad.first_failing_order == 1),
               "sample " + std::to_string(s));
  }
  return rep;
}

SweepReport sweep_deviation(std::uint64_t seed, int samples) {
  SweepReport rep{"deviation", {}};
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const CosimplicialDgla& c = s % 2 ? heisenberg_cech() : abelian_cech();
    int n = (s / 2) % 2;
    int kind = (s / 4) % 3;
    std::string what = std::string(s % 2 ? "nilpotent" : "abelian") + " n=" + std::to_string(n) +
                       " sample " + std::to_string(s);
    DeviationResult r;
    if (kind == 0) {
      DescentDatum D = n == 0 ? random_datum(rng, c, 2) : random_exact_datum(rng, c, 2);
      if (n == 1) {
        DescentDatum eps = random_datum(rng, c, 2, 2);
        D.lambda += eps.lambda;
        D.g += eps.g;
        D.t += eps.t;
      }
      r = deviation_cocycle(c, D, n + 1);
      rep.record("descent deviation closed", r.precondition_ok && r.closed, what);
    } else if (kind == 1) {
      DescentDatum triv = DescentDatum::trivial(c, 2);
      DescentIso ia = random_iso(rng, c, 2), ib = random_iso(rng, c, 2);
      DescentDatum A = transport_datum(c, triv, ia), B = transport_datum(c, triv, ib);
      DescentIso near = random_iso(rng, c, 2);
      if (n == 1) {
        DescentIso noise = random_iso(rng, c, 2, 2);
        near = DescentIso{order_part(ib.h - ia.h, 1) + noise.h, order_part(ib.s - ia.s, 1) + noise.s};
      }
      r = iso_deviation_cocycle(c, A, B, near, n + 1);
      rep.record("iso deviation closed", r.precondition_ok && r.closed, what);
    } else {
      DescentDatum A = random_exact_datum(rng, c, 2);
      DescentIso iso = random_iso(rng, c, 2);
      DescentDatum to = transport_datum(c, A, iso);
      DescentTwoIso r0{random_element(rng, c.level(0), -1, 2)};
      DescentIso other = transport_iso(c, to, iso, r0);
      DescentTwoIso rr{truncate_above(r0.r, n) +
                       order_part(random_element(rng, c.level(0), -1, 2, n + 1, 1), n + 1)};
      r = two_iso_deviation_cocycle(c, A, to, iso, other, rr, n + 1);
      rep.record("two-iso deviation closed", r.precondition_ok && r.closed, what);
    }
  }
  return rep;
}

SweepReport sweep_totalization(std::uint64_t seed, int collections) {
  SweepReport rep{"totalization", {}};
  Rng rng(seed);
  // de Rham-Sullivan forms
  for (int p = 1; p <= 3; ++p) {
    for (int trial = 0; trial < 4; ++trial) {
      PolyForm w = random_form(rng, p, 3);
      rep.record("d squared", sullivan_d(sullivan_d(w)).is_zero());
      int i = rng.uniform(0, p);
      std::vector<int> f = coface_map(p, i);
      rep.record("pullback commutes with d",
                 pullback(sullivan_d(w), f) == sullivan_d(pullback(w, f)));
    }
  }
  // Tot of the constant cosimplicial DGLA on levels 0..2
  DglaPtr B = make_cdga_model();
  CosimplicialDgla cB = constant_cosimplicial(B, 2);
  Totalization T = totalize(cB, 2, 4);
  for (const auto& [deg, fams] : T.basis)
    for (const auto& fam : fams) {
      rep.record("families compatible", tot_compatible(cB, fam).ok);
      rep.record("differential keeps compatibility", tot_compatible(cB, tot_differential(fam)).ok);
      rep.record("Tot d squared", is_zero(tot_differential(tot_differential(fam))));
    }
  int kernel0 = B->dim(0) - rank(B->differential_block(0));
  rep.record("degree-0 flat part", tot_closed_dimension(T, 0) == kernel0,
             std::to_string(tot_closed_dimension(T, 0)) + " vs " + std::to_string(kernel0));
  // curved differential on random collections
  for (int k = 0; k < collections; ++k) {
    AlgebraPresentation a = k % 2 ? matrix_algebra(2) : truncated_polynomial_algebra(3);
    DrsSetting S = DrsSetting::constant(Nerve::full(3), a);
    S.curvature = random_exact_curvature(rng, S, a.center_basis(), 2);
    bool setting_ok = drs_validate_curvature(S).ok;
    DrsCollection w = random_drs_collection(rng, S, 2, 2);
    DrsCollection dw = drs_differential(S, w);
    rep.record("curved differential squares to zero",
               setting_ok && drs_validate(S, w).ok && drs_validate(S, dw).ok &&
                   all_zero(drs_differential(S, dw)),
               "collection " + std::to_string(k));
  }
  return rep;
}

SweepReport sweep_stack(std::uint64_t seed, int samples) {
  SweepReport rep{"stack", {}};
  Rng rng(seed);
  Nerve N = Nerve::full(4);
  for (int s = 0; s < samples; ++s) {
    StackDatum S = s % 2 ? random_inner_stack(rng, N, matrix_algebra(2))
                         : random_coboundary_gerbe(rng, N, truncated_polynomial_algebra(2));
    rep.record("random data validate", validate_stack(S).ok, "sample " + std::to_string(s));
    StackReport bad = validate_stack(perturb_unit(rng, S));
    const StackCheck* f = bad.first_failure();
    rep.record("perturbed unit fails with a witness",
               !bad.ok && f && (f->name == "two-cocycle 2" || f->name == "two-cocycle 1") &&
                   !f->witness.empty(),
               "sample " + std::to_string(s));
  }
  return rep;
}

SweepReport sweep_twisted(std::uint64_t seed, int stacks, int cochains) {
  SweepReport rep{"twisted matrices", {}};
  Rng rng(seed);
  Nerve N = Nerve::full(3);
  int coherent = 0;
  for (int s = 0; s < stacks; ++s) {
    StackDatum S = s % 4 == 3 ? random_inner_stack(rng, N, matrix_algebra(2))
                              : random_coboundary_gerbe(rng, N, truncated_polynomial_algebra(2));
    if (s % 2 == 1) S = perturb_unit(rng, S);
    bool valid = validate_stack(S).ok;
    coherent += valid;
    rep.record("associative iff stack datum", valid == twisted_associative_everywhere(S),
               "stack " + std::to_string(s));
  }
  rep.record("both classes sampled", coherent > 0 && coherent < stacks, "one class missing");
  StackDatum S = random_coboundary_gerbe(rng, N, truncated_polynomial_algebra(2));
  int top = S.nerve.index_of({0, 1, 2});
  AlgebraPresentation tw = twisted_matrix_build(S, top);
  for (int k = 0; k < cochains; ++k) {
    HochschildCochain D = random_local_cochain(rng, S, top, rng.uniform(0, 2));
    HochschildCochain E = random_local_cochain(rng, S, top, rng.uniform(0, 2));
    bool ok = local_cochain_check(S, top, D).ok && local_cochain_check(S, top, E).ok;
    rep.record("local cochains closed under delta and bracket",
               ok && local_cochain_check(S, top, hochschild_delta(tw, D)).ok &&
                   local_cochain_check(S, top, gerstenhaber(D, E)).ok,
               "cochain " + std::to_string(k));
  }
  return rep;
}

SweepReport sweep_barycentric(std::uint64_t seed, int samples) {
  SweepReport rep{"barycentric", {}};
  Rng rng(seed);
  Nerve N = Nerve::full(4);
  AlgebraPresentation base = truncated_polynomial_algebra(2);
  for (int s = 0; s < samples; ++s) {
    ChainDatum C = random_coboundary_chain(rng, N, base);
    BarycentricResult r = barycentric_reconstruct(C);
    rep.record("reconstruction satisfies both equations",
               r.coherence.ok && r.datum && validate_stack(*r.datum).ok,
               "chain " + std::to_string(s));
    StackDatum S = random_coboundary_gerbe(rng, N, base);
    BarycentricResult back = barycentric_reconstruct(chain_from_stack(S));
    rep.record("round trip is isomorphic",
               back.datum && stack_iso_verify(round_trip_iso(S), S, *back.datum),
               "stack " + std::to_string(s));
  }
  return rep;
}

SweepReport sweep_fedosov(std::uint64_t seed, int samples) {
  SweepReport rep{"fedosov", {}};
  Rng rng(seed);
  SymplecticModel m = SymplecticModel::standard(1);
  WeylTrunc t{3, 6, 0};
  // the canonical solution
  FedosovPair p0 = fedosov_solve(m, CentralSeries{m.omega, {}}, t);
  rep.record("flat and curvature identities", fedosov_verify(p0).ok, "canonical pair");
  CharacteristicClass c0 = characteristic_class(p0);
  rep.record("leading class is omega", c0.central && c0.series.leading == m.omega, "canonical pair");
  WeylTrunc tb{3, 6, 1};
  for (int s = 0; s < samples; ++s) {
    std::string what = "sample " + std::to_string(s);
    CentralSeries target{m.omega, {antisym2(rng.scalar()), antisym2(rng.scalar())}};
    const WeylTrunc& tt = s % 2 ? tb : t;
    FedosovPair p = fedosov_solve(m, target, tt, random_weyl(rng, 1, 0, 3, tt, 25));
    FlatnessReport fr = fedosov_verify(p);
    rep.record("flat and curvature identities", fr.ok, what + ": " + fr.failure);
    CharacteristicClass cc = characteristic_class(p);
    rep.record("leading class is omega",
               cc.central && cc.closed && cc.series.leading == m.omega &&
                   cc.theta == target.to_form(1).truncated(tt),
               what);
    EquivalenceMove g = equivalence_gauge(p, random_weyl(rng, 1, 0, 3, tt, 15));
    CharacteristicClass cg = characteristic_class(g.pair);
    rep.record("gauge move shifts the class by d alpha",
               fedosov_verify(g.pair).ok && cg.central &&
                   cg.theta == (cc.theta - base_d(g.alpha)).truncated(tt),
               what);
    WeylForm beta = random_weyl(rng, 1, 1, 3, tt, 15);
    EquivalenceMove sh = equivalence_shift(p, beta);
    CharacteristicClass cs = characteristic_class(sh.pair);
    rep.record("shift move shifts the class by d alpha",
               fedosov_verify(sh.pair).ok && cs.central &&
                   cs.theta == (cc.theta - base_d(sh.alpha)).truncated(tt),
               what);
  }
  return rep;
}

SweepReport sweep_moyal(std::uint64_t seed) {
  SweepReport rep{"moyal", {}};
  Rng rng(seed);
  for (int n : {1, 2}) {
    SymplecticModel m = n == 1 ? SymplecticModel::standard(1) : SymplecticModel::standard(2);
    if (n == 2) {
      // a non-standard form too
      Matrix w = m.omega;
      w(0, 1) = Scalar(1);
      w(1, 0) = Scalar(-1);
      m = SymplecticModel::from_form(w);
    }
    WeylTrunc t{3, 6, 0};
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) {
        WeylForm ya = WeylForm::generator(n, a), yb = WeylForm::generator(n, b);
        WeylForm expect(n);
        expect.add(WeylKey{0, std::vector<int>(2 * n, 0), 1, std::vector<int>(2 * n, 0)},
                   Scalar::imag_unit() * m.poisson(a, b));
        rep.record("generator commutators", moyal(m, ya, yb, t) - moyal(m, yb, ya, t) == expect,
                   "n=" + std::to_string(n) + " pair " + join({a, b}));
      }
  }
  // all monomials hbar^k y^e of weight <= 6 at n = 1
  SymplecticModel m = SymplecticModel::standard(1);
  WeylTrunc t{3, 6, 0};
  std::vector<WeylForm> basis;
  for (int k = 0; k <= 3; ++k)
    for (int d = 0; d + 2 * k <= 6; ++d)
      for (int e = 0; e <= d; ++e)
        basis.push_back(WeylForm::monomial(1, WeylKey{0, {0, 0}, k, {e, d - e}}));
  std::vector<std::vector<WeylForm>> prod(basis.size(), std::vector<WeylForm>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) prod[i][j] = moyal(m, basis[i], basis[j], t);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j)
      for (size_t k = 0; k < basis.size(); ++k) {
        if (basis[i].min_weight() + basis[j].min_weight() + basis[k].min_weight() > t.max_weight)
          continue;  // both sides vanish in the truncation
        rep.record("associativity on the monomial basis",
                   moyal(m, prod[i][j], basis[k], t) == moyal(m, basis[i], prod[j][k], t),
                   "triple " + join({int(i), int(j), int(k)}));
      }
  return rep;
}

SweepReport sweep_char_class(std::uint64_t seed, int samples) {
  SweepReport rep{"characteristic class", {}};
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    int n = s % 3 == 2 ? 2 : 1;
    SymplecticModel m = SymplecticModel::standard(n);
    WeylTrunc t = n == 1 ? WeylTrunc{3, 6, 0} : WeylTrunc{1, 4, 0};
    CentralSeries target{m.omega, {}};
    Matrix th(2 * n, 2 * n);
    th(0, 1) = rng.scalar();
    th(1, 0) = -th(0, 1);
    target.orders.push_back(th);
    FedosovPair p = fedosov_solve(m, target, t, random_weyl(rng, n, 0, 3, t, n == 1 ? 25 : 10));
    CharacteristicClass cc = characteristic_class(p);
    rep.record("class central, closed and equal to the target",
               cc.central && cc.closed && cc.theta == target.to_form(n).truncated(t),
               "sample " + std::to_string(s));
  }
  return rep;
}

SweepReport sweep_rw(std::uint64_t seed, int samples) {
  SweepReport rep{"rozansky-witten", {}};
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    int n = s % 2 ? 2 : 1;
    int dim = 2 * n;
    SymplecticModel m = SymplecticModel::standard(n);
    Tensor4 R(dim, std::vector<std::vector<std::vector<Scalar>>>(
                       dim, std::vector<std::vector<Scalar>>(dim, std::vector<Scalar>(dim))));
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b)
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j)
            if (rng.coin(1, 3)) R[a][b][i][j] = R[b][a][i][j] = rng.scalar();
    Matrix got = rw_form(R, m);
    // oracle: contract the first copy with the Poisson tensor, then the second
    bool match = true;
    for (int j = 0; j < dim; ++j)
      for (int l = 0; l < dim; ++l) {
        auto S = [&](int jj, int ll) {
          Scalar sum;
          for (int c = 0; c < dim; ++c)
            for (int d = 0; d < dim; ++d)
              for (int k = 0; k < dim; ++k) {
                Scalar raised;
                for (int a = 0; a < dim; ++a)
                  for (int b = 0; b < dim; ++b)
                    for (int i = 0; i < dim; ++i)
                      raised += R[a][b][i][jj] * m.poisson(a, c) * m.poisson(b, d) * m.poisson(i, k);
                sum += raised * R[c][d][k][ll];
              }
          return sum;
        };
        match = match && got(j, l) == S(j, l) - S(l, j);
      }
    rep.record("contraction matches the oracle", match, "sample " + std::to_string(s));
    Tensor4 Z(dim, std::vector<std::vector<std::vector<Scalar>>>(
                       dim, std::vector<std::vector<Scalar>>(dim, std::vector<Scalar>(dim))));
    rep.record("zero tensor gives zero", rw_form(Z, m).is_zero());
    Matrix x(dim, dim), y(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        x(i, j) = rng.scalar();
        y(i, j) = rng.scalar();
      }
    Matrix pr = omega_pairing(x, y, m);
    bool pm = true;
    for (int j = 0; j < dim; ++j)
      for (int l = 0; l < dim; ++l) {
        Scalar sum;
        for (int i = 0; i < dim; ++i)
          for (int k = 0; k < dim; ++k)
            sum += x(i, j) * y(k, l) * m.omega(i, k) - x(i, l) * y(k, j) * m.omega(i, k);
        pm = pm && pr(j, l) == sum;
      }
    rep.record("pairing matches the oracle", pm, "sample " + std::to_string(s));
  }
  return rep;
}

}  // namespace defq
