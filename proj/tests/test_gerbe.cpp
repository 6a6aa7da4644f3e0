#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defq/gerbe.hpp"

using namespace defq;

namespace {

bool twisted_associative_everywhere(const StackDatum& S) {
  for (int s = 0; s < S.nerve.size(); ++s)
    if (!twisted_matrix_build(S, s).is_associative()) return false;
  return true;
}

// multiply one unit c_ijk with i, j, k distinct by a non-trivial unit
StackDatum perturb(Rng& rng, StackDatum S) {
  std::vector<Triple> keys;
  for (const auto& [k, v] : S.c)
    if (k[0] != k[1] && k[1] != k[2]) keys.push_back(k);
  Triple k = keys[rng.uniform(0, int(keys.size()) - 1)];
  const AlgebraPresentation& a = S.algebra[k[0]];
  Element u = unit_of(a);
  u[0] += Scalar(rng.uniform(1, 3));
  S.c[k] = a.multiply(S.c[k], u);
  return S;
}

bool all_zero(const DrsCollection& w) {
  for (const auto& f : w)
    if (!f.is_zero()) return false;
  return true;
}

// b_ij = c_iji^-1 for i < j: the round trip twists G_ij by this inner automorphism
StackIso round_trip_iso(const StackDatum& S) {
  StackIso iso = identity_iso(S);
  for (auto& [k, b] : iso.b)
    if (k[0] < k[1]) b = *inverse_element(S.algebra[k[0]], S.c.at({k[0], k[1], k[0]}));
  return iso;
}

}  // namespace

TEST_CASE("trivial gerbe and plain matrices") {
  Nerve N = Nerve::full(3);
  StackDatum S = StackDatum::trivial(N, product_algebra(1));
  CHECK(validate_stack(S).ok);
  int top = N.index_of({0, 1, 2});
  AlgebraPresentation tw = twisted_matrix_build(S, top);
  AlgebraPresentation m3 = matrix_algebra(3);
  REQUIRE(tw.dim() == 9);
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      Element ea(9), eb(9);
      ea[a] = Scalar(1);
      eb[b] = Scalar(1);
      CHECK(tw.multiply(ea, eb) == m3.multiply(ea, eb));
    }
  CHECK(tw.unit() == m3.unit());
}

TEST_CASE("coboundary gerbes pass and a perturbed unit is caught") {
  Rng rng(2);
  AlgebraPresentation base = truncated_polynomial_algebra(2);
  Nerve N = Nerve::full(3);
  StackDatum S = random_coboundary_gerbe(rng, N, base);
  CHECK(validate_stack(S).ok);
  CHECK(S.c.at({0, 1, 2}) != unit_of(base));

  StackDatum bad = perturb(rng, S);
  StackReport rep = validate_stack(bad);
  CHECK_FALSE(rep.ok);
  const StackCheck* f = rep.first_failure();
  REQUIRE(f != nullptr);
  CHECK(f->name == "two-cocycle 2");
  CHECK(f->witness.size() == 4);

  // a non-central unit breaks the first equation in a gerbe
  StackDatum m = StackDatum::trivial(N, matrix_algebra(2));
  m.c[{0, 1, 2}] = Element{Scalar(1), Scalar(1), Scalar(0), Scalar(1)};
  rep = validate_stack(m);
  CHECK_FALSE(rep.ok);
  bool first_eq_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "two-cocycle 1") first_eq_failed = !c.ok && c.witness == std::vector<int>{0, 1, 2};
  CHECK(first_eq_failed);

  // unnormalized units are rejected
  StackDatum un = S;
  un.c[{0, 0, 1}] = Element{Scalar(2), Scalar(0)};
  CHECK(validate_stack(un).checks[0].ok == false);
}

TEST_CASE("inner stacks are stack data but not gerbes") {
  Rng rng(3);
  StackDatum S = random_inner_stack(rng, Nerve::full(3), matrix_algebra(2));
  CHECK(validate_stack(S).ok);
  CHECK(twisted_associative_everywhere(S));
  CHECK_FALSE(S.G.at({0, 1}) == Matrix::identity(4));
}

TEST_CASE("stack isomorphisms") {
  Rng rng(4);
  AlgebraPresentation base = truncated_polynomial_algebra(2);
  Nerve N = Nerve::full(3);
  StackDatum S = random_coboundary_gerbe(rng, N, base);
  CHECK(stack_iso_verify(identity_iso(S), S, S));

  // twisting the trivial gerbe by b gives c_ijk = b_ij b_jk b_ik^-1
  StackDatum T = StackDatum::trivial(N, base);
  StackIso iso = random_stack_iso(rng, T);
  for (auto& h : iso.H) h = Matrix::identity(base.dim());
  StackDatum twisted = T;
  for (auto& [k, c] : twisted.c) {
    Element x = base.multiply(iso.b.at({k[0], k[1]}), iso.b.at({k[1], k[2]}));
    c = base.multiply(x, *inverse_element(base, iso.b.at({k[0], k[2]})));
  }
  CHECK(validate_stack(twisted).ok);
  CHECK(stack_iso_verify(iso, T, twisted));
  CHECK_FALSE(stack_iso_verify(random_stack_iso(rng, T), T, S));

  // nonabelian: a random isomorphism applied to an inner stack
  StackDatum I = random_inner_stack(rng, N, matrix_algebra(2));
  StackIso J = random_stack_iso(rng, I);
  StackDatum I2 = apply_stack_iso(I, J);
  CHECK(validate_stack(I2).ok);
  CHECK(stack_iso_verify(J, I, I2));
}

TEST_CASE("twisted matrices are associative exactly for stack data") {
  Rng rng(5);
  Nerve N = Nerve::full(3);
  int agree = 0, coherent = 0;
  for (int trial = 0; trial < 16; ++trial) {
    bool inner = trial % 4 == 3;
    StackDatum S = inner ? random_inner_stack(rng, N, matrix_algebra(2))
                         : random_coboundary_gerbe(rng, N, truncated_polynomial_algebra(2));
    if (trial % 2 == 1) S = perturb(rng, S);
    bool valid = validate_stack(S).ok;
    coherent += valid;
    agree += valid == twisted_associative_everywhere(S);
  }
  CHECK(agree == 16);
  CHECK(coherent == 8);
}

TEST_CASE("local cochains") {
  Rng rng(6);
  AlgebraPresentation base = truncated_polynomial_algebra(2);
  StackDatum S = random_coboundary_gerbe(rng, Nerve::full(2), base);
  int top = S.nerve.index_of({0, 1});
  AlgebraPresentation tw = twisted_matrix_build(S, top);
  CHECK(local_cochain_check(S, top, multiplication_cochain(tw, 0)).ok);
  CHECK(local_cochain_check(S, top, identity_cochain(tw.dim(), 0)).ok);

  TwistedLayout L = twisted_layout(S, top);
  std::vector<Series> diag(tw.dim(), Series(0));
  diag[L.slot(1, 1, 1)] = Series(0, Scalar(3));
  CHECK(local_cochain_check(S, top, element_cochain(diag)).ok);
  diag[L.slot(0, 1, 0)] = Series(0, Scalar(1));
  ValidationReport rep = local_cochain_check(S, top, element_cochain(diag));
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "diagonal");

  HochschildCochain off(tw.dim(), 2, 0);
  off.at({L.slot(0, 1, 0), L.slot(0, 1, 0)}, L.slot(0, 1, 0)) = Series(0, Scalar(1));
  rep = local_cochain_check(S, top, off);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "chain");
  HochschildCochain wrong_slot(tw.dim(), 1, 0);
  wrong_slot.at(std::vector<int>{L.slot(0, 1, 0)}, L.slot(1, 1, 0)) = Series(0, Scalar(1));
  CHECK(local_cochain_check(S, top, wrong_slot).axiom == "slot");

  // closed under delta and the bracket
  for (int trial = 0; trial < 6; ++trial) {
    int k = rng.uniform(0, 2), l = rng.uniform(0, 2);
    HochschildCochain D = random_local_cochain(rng, S, top, k);
    HochschildCochain E = random_local_cochain(rng, S, top, l);
    REQUIRE(local_cochain_check(S, top, D).ok);
    CHECK(local_cochain_check(S, top, hochschild_delta(tw, D)).ok);
    CHECK(local_cochain_check(S, top, gerstenhaber(D, E)).ok);
  }
}

TEST_CASE("multiplication restricts to the face algebras") {
  Rng rng(7);
  for (bool inner : {false, true}) {
    StackDatum S = inner ? random_inner_stack(rng, Nerve::full(3), matrix_algebra(2))
                         : random_coboundary_gerbe(rng, Nerve::full(3), truncated_polynomial_algebra(2));
    DrsSetting D = twisted_drs_setting(S);
    for (const auto& [st, iota] : D.inclusion) {
      HochschildCochain big = multiplication_cochain(D.algebra[st.second], 0);
      std::optional<HochschildCochain> r = restrict_cochain(big, iota, D.proj(st.first, st.second), true);
      REQUIRE(r);
      CHECK(*r == multiplication_cochain(D.algebra[st.first], 0));
    }
  }
}

TEST_CASE("de Rham-Sullivan forms of local cochains") {
  Rng rng(8);
  StackDatum S = random_coboundary_gerbe(rng, Nerve::full(3), truncated_polynomial_algebra(2));
  DrsSetting D = twisted_drs_setting(S);
  int top = S.nerve.index_of({0, 1, 2});
  D.curvature = random_exact_curvature(rng, D, D.algebra[top].center_basis(), 1);
  REQUIRE(drs_validate_curvature(D).ok);
  for (int trial = 0; trial < 2; ++trial) {
    DrsForm w(2, D.algebra[top].dim());
    for (int f = 0; f <= 2; ++f)
      for (const auto& t : form_terms(2, f, 1))
        if (rng.coin()) w.add(t, random_local_cochain(rng, S, top, rng.uniform(0, 1), 20));
    DrsCollection col = drs_from_top(D, top, w);
    REQUIRE(drs_validate(D, col).ok);
    DrsCollection dcol = drs_differential(D, col);
    CHECK(drs_validate(D, dcol).ok);
    CHECK(all_zero(drs_differential(D, dcol)));
  }
  // a non-local cochain leaves the face subalgebras
  DrsForm w(2, D.algebra[top].dim());
  HochschildCochain bad(D.algebra[top].dim(), 1, 0);
  TwistedLayout L = twisted_layout(S, top);
  bad.at(std::vector<int>{L.slot(0, 1, 0)}, L.slot(2, 2, 0)) = Series(0, Scalar(1));
  w.add(FormTerm{{0, 0}, 0u}, bad);
  ValidationReport rep = drs_validate(D, drs_from_top(D, top, w));
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "subalgebra");
}

TEST_CASE("barycentric reconstruction") {
  Rng rng(9);
  Nerve N = Nerve::full(4);
  AlgebraPresentation base = truncated_polynomial_algebra(2);

  BarycentricResult triv = barycentric_reconstruct(ChainDatum::trivial(N, base));
  REQUIRE(triv.datum);
  StackDatum T = StackDatum::trivial(N, base);
  CHECK(triv.datum->G == T.G);
  CHECK(triv.datum->c == T.c);

  for (int trial = 0; trial < 3; ++trial) {
    ChainDatum C = random_coboundary_chain(rng, N, base);
    REQUIRE(validate_chain_datum(C).ok);
    BarycentricResult r = barycentric_reconstruct(C);
    REQUIRE(r.datum);
    CHECK(validate_stack(*r.datum).ok);
  }

  // round trip through chains
  for (bool inner : {false, true}) {
    StackDatum S = inner ? random_inner_stack(rng, Nerve::full(3), matrix_algebra(2))
                         : random_coboundary_gerbe(rng, N, base);
    ChainDatum C = chain_from_stack(S);
    CHECK(validate_chain_datum(C).ok);
    BarycentricResult r = barycentric_reconstruct(C);
    REQUIRE(r.datum);
    CHECK(validate_stack(*r.datum).ok);
    CHECK(stack_iso_verify(round_trip_iso(S), S, *r.datum));
  }

  // nonabelian chain data and transported isomorphisms
  ChainDatum C = random_inner_chain(rng, Nerve::full(3), matrix_algebra(2));
  REQUIRE(validate_chain_datum(C).ok);
  StackIso ci = random_chain_iso(rng, C);
  ChainDatum C2 = apply_chain_iso(C, ci);
  REQUIRE(validate_chain_datum(C2).ok);
  BarycentricResult r1 = barycentric_reconstruct(C), r2 = barycentric_reconstruct(C2);
  REQUIRE(r1.datum);
  REQUIRE(r2.datum);
  CHECK(validate_stack(*r1.datum).ok);
  CHECK(stack_iso_verify(barycentric_iso(C, ci), *r1.datum, *r2.datum));

  // incoherent input is reported and not reconstructed
  ChainDatum bad = random_coboundary_chain(rng, N, base);
  int s0 = N.index_of({0}), s01 = N.index_of({0, 1}), s012 = N.index_of({0, 1, 2});
  bad.c[{s0, s01, s012}] = base.multiply(bad.c[{s0, s01, s012}], Element{Scalar(2), Scalar(1)});
  BarycentricResult rb = barycentric_reconstruct(bad);
  CHECK_FALSE(rb.coherence.ok);
  CHECK_FALSE(rb.datum);
}
