#include "defq/fedosov.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace defq {

namespace {

int popcount(unsigned m) { return std::popcount(m); }

int sum(const std::vector<int>& v) {
  int s = 0;
  for (int e : v) s += e;
  return s;
}

// sign of dx^I ^ dx^J relative to the sorted product; 0 if they overlap
int wedge_sign(unsigned I, unsigned J) {
  if (I & J) return 0;
  int swaps = 0;
  for (unsigned j = J; j; j &= j - 1) {
    int b = std::countr_zero(j);
    swaps += popcount(I >> (b + 1));
  }
  return swaps % 2 ? -1 : 1;
}

// sign of moving dx^a to the front of dx^I (a not in I)
int front_sign(unsigned I, int a) { return popcount(I & ((1u << a) - 1)) % 2 ? -1 : 1; }

std::vector<int> add_vec(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Scalar power_of_i(int k) {
  static const Scalar table[4] = {Scalar(1), Scalar::imag_unit(), Scalar(-1), -Scalar::imag_unit()};
  return table[((k % 4) + 4) % 4];
}

// all exponent vectors of length len with total degree exactly d
void exponents(int len, int d, std::vector<int>& cur, int pos,
               const std::function<void(const std::vector<int>&)>& f) {
  if (pos == len - 1) {
    cur[pos] = d;
    f(cur);
    return;
  }
  for (int e = 0; e <= d; ++e) {
    cur[pos] = e;
    exponents(len, d - e, cur, pos + 1, f);
  }
}

void for_each_exponent(int len, int max_degree,
                       const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur(len, 0);
  for (int d = 0; d <= max_degree; ++d) exponents(len, d, cur, 0, f);
}

using YProduct = std::vector<std::pair<std::pair<int, std::vector<int>>, Scalar>>;

// y^alpha * y^beta as (hbar power, exponent) -> coefficient
YProduct monomial_moyal(const SymplecticModel& m, const std::vector<int>& alpha,
                        const std::vector<int>& beta, int max_k) {
  int dim = m.dim();
  std::map<std::pair<int, std::vector<int>>, Scalar> out;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Scalar> layer;
  layer[{alpha, beta}] = Scalar(1);
  Scalar half_i = Scalar::imag_unit() * Scalar(frac(1, 2));
  Scalar pref(1);  // (i/2)^k / k!
  for (int k = 0; k <= max_k && !layer.empty(); ++k) {
    for (const auto& [ab, c] : layer) {
      std::vector<int> e = add_vec(ab.first, ab.second);
      out[{k, e}] += c * pref;
    }
    std::map<std::pair<std::vector<int>, std::vector<int>>, Scalar> next;
    for (const auto& [ab, c] : layer) {
      for (int a = 0; a < dim; ++a) {
        if (ab.first[a] == 0) continue;
        for (int b = 0; b < dim; ++b) {
          const Scalar& p = m.poisson(a, b);
          if (p.is_zero() || ab.second[b] == 0) continue;
          auto na = ab.first;
          auto nb = ab.second;
          Scalar coef = c * p * Scalar(na[a]) * Scalar(nb[b]);
          --na[a];
          --nb[b];
          next[{na, nb}] += coef;
        }
      }
    }
    layer.clear();
    for (auto& [ab, c] : next)
      if (!c.is_zero()) layer.emplace(ab, c);
    pref *= half_i;
    pref /= Scalar(k + 1);
  }
  YProduct r;
  for (auto& [key, c] : out)
    if (!c.is_zero()) r.push_back({key, c});
  return r;
}

WeylForm scaled_sum(WeylForm acc, const WeylForm& f, const Scalar& s) {
  for (const auto& [k, c] : f.terms()) acc.add(k, c * s);
  return acc;
}

}  // namespace

// ---- model

SymplecticModel SymplecticModel::from_form(const Matrix& omega) {
  if (omega.rows() != omega.cols() || omega.rows() == 0 || omega.rows() % 2)
    throw UsageError("symplectic form must be a nonempty square matrix of even size");
  if (omega.rows() > 16) throw UsageError("symplectic model too large");
  for (int a = 0; a < omega.rows(); ++a)
    for (int b = 0; b < omega.rows(); ++b)
      if (omega(a, b) != -omega(b, a)) throw DomainError("symplectic form is not antisymmetric");
  SymplecticModel m;
  m.n = omega.rows() / 2;
  m.omega = omega;
  // P w^T = 1
  m.poisson = inverse(omega.transpose());
  return m;
}

SymplecticModel SymplecticModel::standard(int n) {
  if (n < 1) throw UsageError("half dimension must be positive");
  Matrix w(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    w(a, a + n) = Scalar(1);
    w(a + n, a) = Scalar(-1);
  }
  return from_form(w);
}

// ---- keys and forms

int WeylKey::form_degree() const { return popcount(dx); }
int WeylKey::y_degree() const { return sum(y); }
int WeylKey::x_degree() const { return sum(x); }

bool operator<(const WeylKey& a, const WeylKey& b) {
  if (a.dx != b.dx) return a.dx < b.dx;
  if (a.x != b.x) return a.x < b.x;
  if (a.hbar != b.hbar) return a.hbar < b.hbar;
  return a.y < b.y;
}

bool WeylTrunc::keeps(const WeylKey& k) const {
  return k.hbar <= max_hbar && k.weight() <= max_weight;
}

WeylForm WeylForm::monomial(int n, const WeylKey& k, const Scalar& c) {
  WeylForm f(n);
  f.add(k, c);
  return f;
}

WeylForm WeylForm::generator(int n, int a) {
  WeylKey k{0, std::vector<int>(2 * n, 0), 0, std::vector<int>(2 * n, 0)};
  k.y[a] = 1;
  return monomial(n, k);
}

void WeylForm::add(const WeylKey& k, const Scalar& c) {
  if (c.is_zero()) return;
  if (int(k.x.size()) != 2 * n_ || int(k.y.size()) != 2 * n_)
    throw UsageError("Weyl monomial has the wrong number of variables");
  if (k.hbar < -1) throw DomainError("pole of order two in hbar");
  auto it = t_.find(k);
  if (it == t_.end()) {
    t_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

WeylForm WeylForm::truncated(const WeylTrunc& t) const {
  WeylForm r(n_);
  for (const auto& [k, c] : t_)
    if (t.keeps(k)) r.t_.emplace(k, c);
  return r;
}

WeylForm WeylForm::y_independent_part() const {
  WeylForm r(n_);
  for (const auto& [k, c] : t_)
    if (k.y_degree() == 0) r.t_.emplace(k, c);
  return r;
}

WeylForm WeylForm::y_dependent_part() const {
  WeylForm r(n_);
  for (const auto& [k, c] : t_)
    if (k.y_degree() > 0) r.t_.emplace(k, c);
  return r;
}

int WeylForm::min_weight() const {
  int w = 1 << 20;
  for (const auto& [k, c] : t_) w = std::min(w, k.weight());
  return w;
}

WeylForm& WeylForm::operator+=(const WeylForm& o) {
  if (o.n_ != n_) throw UsageError("Weyl forms over different models");
  for (const auto& [k, c] : o.t_) add(k, c);
  return *this;
}

WeylForm& WeylForm::operator-=(const WeylForm& o) {
  if (o.n_ != n_) throw UsageError("Weyl forms over different models");
  for (const auto& [k, c] : o.t_) add(k, -c);
  return *this;
}

WeylForm& WeylForm::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [k, c] : t_) c *= s;
  return *this;
}

std::string WeylForm::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (k.hbar) os << " h^" << k.hbar;
    for (int a = 0; a < 2 * n_; ++a)
      if (k.dx >> a & 1u) os << " dx" << a + 1;
    for (int a = 0; a < 2 * n_; ++a)
      if (k.x[a]) os << " x" << a + 1 << "^" << k.x[a];
    for (int a = 0; a < 2 * n_; ++a)
      if (k.y[a]) os << " y" << a + 1 << "^" << k.y[a];
  }
  return os.str();
}

// ---- products

WeylForm moyal(const SymplecticModel& m, const WeylForm& f, const WeylForm& g,
               const WeylTrunc& t) {
  if (f.n() != m.n || g.n() != m.n) throw UsageError("Weyl form does not match the model");
  WeylForm r(m.n);
  std::map<std::pair<std::vector<int>, std::vector<int>>, YProduct> cache;
  for (const auto& [kf, cf] : f.terms()) {
    for (const auto& [kg, cg] : g.terms()) {
      if (kf.weight() + kg.weight() > t.max_weight) continue;
      int h = kf.hbar + kg.hbar;
      if (h > t.max_hbar) continue;
      int s = wedge_sign(kf.dx, kg.dx);
      if (s == 0) continue;
      auto key = std::make_pair(kf.y, kg.y);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, monomial_moyal(m, kf.y, kg.y, t.max_hbar - h)).first;
      Scalar base = cf * cg * Scalar(s);
      for (const auto& [hy, c] : it->second) {
        if (h + hy.first > t.max_hbar) continue;
        WeylKey k{kf.dx | kg.dx, add_vec(kf.x, kg.x), h + hy.first, hy.second};
        r.add(k, base * c);
      }
    }
  }
  return r;
}

WeylForm weyl_bracket(const SymplecticModel& m, const WeylForm& f, const WeylForm& g,
                      const WeylTrunc& t) {
  // split by form-degree parity so mixed forms get the right sign
  WeylForm r = moyal(m, f, g, t);
  WeylForm fe(m.n), fo(m.n), ge(m.n), go(m.n);
  for (const auto& [k, c] : f.terms()) (k.form_degree() % 2 ? fo : fe).add(k, c);
  for (const auto& [k, c] : g.terms()) (k.form_degree() % 2 ? go : ge).add(k, c);
  r -= moyal(m, ge, f, t);
  r -= moyal(m, go, fe, t);
  r += moyal(m, go, fo, t);
  return r;
}

WeylForm divide_by_ihbar(const WeylForm& f) {
  WeylForm r(f.n());
  Scalar minus_i = -Scalar::imag_unit();
  for (const auto& [k, c] : f.terms()) {
    WeylKey nk = k;
    --nk.hbar;
    r.add(nk, c * minus_i);
  }
  return r;
}

WeylForm multiply_by_ihbar(const WeylForm& f) {
  WeylForm r(f.n());
  for (const auto& [k, c] : f.terms()) {
    WeylKey nk = k;
    ++nk.hbar;
    r.add(nk, c * Scalar::imag_unit());
  }
  return r;
}

// ---- the operators d, delta, delta^-1

WeylForm base_d(const WeylForm& f) {
  WeylForm r(f.n());
  for (const auto& [k, c] : f.terms()) {
    for (int a = 0; a < 2 * f.n(); ++a) {
      if (k.x[a] == 0 || (k.dx >> a & 1u)) continue;
      WeylKey nk = k;
      --nk.x[a];
      nk.dx |= 1u << a;
      r.add(nk, c * Scalar(k.x[a] * front_sign(k.dx, a)));
    }
  }
  return r;
}

WeylForm fiber_delta(const WeylForm& f) {
  WeylForm r(f.n());
  for (const auto& [k, c] : f.terms()) {
    for (int a = 0; a < 2 * f.n(); ++a) {
      if (k.y[a] == 0 || (k.dx >> a & 1u)) continue;
      WeylKey nk = k;
      --nk.y[a];
      nk.dx |= 1u << a;
      r.add(nk, c * Scalar(k.y[a] * front_sign(k.dx, a)));
    }
  }
  return r;
}

WeylForm delta_inverse(const WeylForm& f) {
  WeylForm r(f.n());
  for (const auto& [k, c] : f.terms()) {
    int pq = k.form_degree() + k.y_degree();
    if (pq == 0) continue;
    for (int a = 0; a < 2 * f.n(); ++a) {
      if (!(k.dx >> a & 1u)) continue;
      WeylKey nk = k;
      nk.dx &= ~(1u << a);
      ++nk.y[a];
      r.add(nk, c * Scalar(front_sign(nk.dx, a)) / Scalar(pq));
    }
  }
  return r;
}

WeylForm harmonic_part(const WeylForm& f) {
  WeylForm r(f.n());
  for (const auto& [k, c] : f.terms())
    if (k.form_degree() == 0 && k.y_degree() == 0) r.add(k, c);
  return r;
}

WeylForm canonical_form(const SymplecticModel& m) {
  WeylForm r(m.n);
  int dim = m.dim();
  for (int b = 0; b < dim; ++b)
    for (int c = 0; c < dim; ++c) {
      WeylKey k{1u << b, std::vector<int>(dim, 0), 0, std::vector<int>(dim, 0)};
      k.y[c] = 1;
      r.add(k, m.omega(c, b));
    }
  return r;
}

WeylForm central_two_form(const Matrix& theta, int hbar_power, int n) {
  int dim = 2 * n;
  if (theta.rows() != dim || theta.cols() != dim)
    throw UsageError("central two-form has the wrong size");
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      if (theta(a, b) != -theta(b, a)) throw UsageError("central two-form is not antisymmetric");
  // (i hbar)^k
  Scalar pre = power_of_i(hbar_power);
  WeylForm r(n);
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      WeylKey k{(1u << a) | (1u << b), std::vector<int>(dim, 0), hbar_power,
                std::vector<int>(dim, 0)};
      r.add(k, theta(a, b) * pre);
    }
  return r;
}

WeylForm CentralSeries::to_form(int n) const {
  WeylForm r = central_two_form(leading, -1, n);
  for (size_t k = 0; k < orders.size(); ++k) r += central_two_form(orders[k], int(k), n);
  return r;
}

// ---- Fedosov pairs

namespace {

WeylTrunc working(const WeylTrunc& t) { return t.widened(2); }

// F*F / (i hbar) for a one-form F
WeylForm square_over_ihbar(const SymplecticModel& m, const WeylForm& F, const WeylTrunc& t) {
  return divide_by_ihbar(moyal(m, F, F, t));
}

}  // namespace

FedosovPair fedosov_solve(const SymplecticModel& m, const CentralSeries& target,
                          const WeylTrunc& trunc, const WeylForm& seed) {
  if (trunc.max_hbar < 0 || trunc.max_weight < 0 || trunc.max_base < 0)
    throw UsageError("truncation bounds must be nonnegative");
  if (!(target.leading == m.omega))
    throw DomainError("leading term of the target class must be omega / (i hbar)");
  for (const Matrix& t : target.orders) central_two_form(t, 0, m.n);  // shape check
  WeylForm mu = seed.is_zero() ? WeylForm(m.n) : seed;
  if (mu.n() != m.n) throw UsageError("seed does not match the model");
  for (const auto& [k, c] : mu.terms())
    if (k.form_degree() != 0 || k.weight() < 3 || k.hbar < 0)
      throw UsageError("seed must be a zero-form of weight at least 3");

  WeylTrunc wt = working(trunc);
  mu = mu.truncated(wt);
  WeylForm Z(m.n);
  if (!target.orders.empty()) Z = central_two_form(target.orders[0], 1, m.n);
  WeylForm dmu = fiber_delta(mu);

  FedosovPair p;
  p.model = m;
  p.trunc = trunc;
  p.F = WeylForm(m.n);
  int limit = wt.max_weight + 4;
  for (int it = 1; it <= limit; ++it) {
    WeylForm rhs = Z - base_d(p.F) - square_over_ihbar(m, p.F, wt);
    WeylForm next = (dmu + delta_inverse(rhs)).truncated(wt);
    p.iterations = it;
    if (next == p.F) break;
    if (it == limit) throw DomainError("Fedosov iteration did not stabilize");
    p.F = std::move(next);
  }
  p.c = lifted_curvature(p) - target.to_form(m.n).truncated(trunc);
  return p;
}

WeylForm fedosov_nabla(const FedosovPair& p, const WeylForm& f) {
  WeylTrunc wt = working(p.trunc);
  return (base_d(f) + fiber_delta(f) + divide_by_ihbar(weyl_bracket(p.model, p.F, f, wt)))
      .truncated(wt);
}

WeylForm lifted_curvature(const FedosovPair& p) {
  WeylTrunc wt = working(p.trunc);
  WeylForm G = canonical_form(p.model) + p.F;
  WeylForm inner = base_d(G) + divide_by_ihbar(moyal(p.model, G, G, wt));
  return divide_by_ihbar(inner).truncated(p.trunc);
}

FlatnessReport fedosov_verify(const FedosovPair& p) {
  FlatnessReport rep;
  int dim = p.model.dim();
  WeylTrunc wt = working(p.trunc);
  for (int h = 0; h <= p.trunc.max_hbar && rep.ok; ++h) {
    for_each_exponent(dim, p.trunc.max_base, [&](const std::vector<int>& xe) {
      for_each_exponent(dim, p.trunc.max_weight - 2 * h - sum(xe), [&](const std::vector<int>& ye) {
        if (!rep.ok) return;
        WeylKey k{0, xe, h, ye};
        WeylForm f = WeylForm::monomial(p.model.n, k);
        WeylForm lhs = fedosov_nabla(p, fedosov_nabla(p, f)).truncated(p.trunc);
        WeylForm rhs = weyl_bracket(p.model, p.c, f, wt).truncated(p.trunc);
        ++rep.checked;
        if (!(lhs == rhs)) {
          rep.ok = false;
          rep.failure = "curvature";
          rep.witness = k;
        }
      });
    });
  }
  if (rep.ok && !fedosov_nabla(p, p.c).truncated(p.trunc).is_zero()) {
    rep.ok = false;
    rep.failure = "nabla c";
  }
  return rep;
}

CharacteristicClass characteristic_class(const FedosovPair& p) {
  CharacteristicClass cc;
  cc.theta = (lifted_curvature(p) - p.c).truncated(p.trunc);
  cc.central = cc.theta.y_dependent_part().is_zero();
  cc.closed = base_d(cc.theta).truncated(p.trunc).is_zero();
  int dim = p.model.dim();
  cc.series.leading = Matrix(dim, dim);
  int top = -1;
  for (const auto& [k, c] : cc.theta.terms()) top = std::max(top, k.hbar);
  cc.series.orders.assign(std::max(0, top + 1), Matrix(dim, dim));
  for (const auto& [k, c] : cc.theta.terms()) {
    if (k.y_degree() || k.x_degree() || k.form_degree() != 2) continue;
    int a = std::countr_zero(k.dx);
    int b = 31 - std::countl_zero(k.dx);
    // coefficient of (i hbar)^k
    Scalar v = c / power_of_i(k.hbar);
    Matrix& M = k.hbar < 0 ? cc.series.leading : cc.series.orders[k.hbar];
    M(a, b) = v;
    M(b, a) = -v;
  }
  return cc;
}

EquivalenceMove equivalence_gauge(const FedosovPair& p, const WeylForm& xi) {
  for (const auto& [k, c] : xi.terms())
    if (k.form_degree() != 0 || k.weight() < 3 || k.hbar < 0)
      throw UsageError("gauge generator must be a zero-form of weight at least 3");
  WeylTrunc wt = working(p.trunc);
  const SymplecticModel& m = p.model;
  auto adX = [&](const WeylForm& y) {
    return divide_by_ihbar(weyl_bracket(m, xi, y, wt)).truncated(wt);
  };
  // F' = F + sum_{j>=1} adX^j(a + F) / j! - sum_{j>=0} adX^j(d xi) / (j+1)!
  FedosovPair q = p;
  WeylForm term = canonical_form(m) + p.F;
  Scalar fact(1);
  for (int j = 1; !term.is_zero(); ++j) {
    term = adX(term);
    fact *= Scalar(j);
    q.F = scaled_sum(q.F, term, Scalar(1) / fact);
  }
  term = base_d(xi).truncated(wt);
  fact = Scalar(1);
  for (int j = 0; !term.is_zero(); ++j) {
    fact *= Scalar(j + 1);
    q.F = scaled_sum(q.F, term, Scalar(-1) / fact);
    term = adX(term);
  }
  WeylForm dropped = q.F.y_independent_part();
  q.F = q.F.y_dependent_part().truncated(wt);
  // c is exact up to the reported range only
  WeylForm cterm = p.c;
  fact = Scalar(1);
  for (int j = 1; !cterm.is_zero(); ++j) {
    cterm = adX(cterm).truncated(p.trunc);
    fact *= Scalar(j);
    q.c = scaled_sum(q.c, cterm, Scalar(1) / fact);
  }
  return {q, divide_by_ihbar(dropped).truncated(p.trunc)};
}

EquivalenceMove equivalence_shift(const FedosovPair& p, const WeylForm& beta) {
  for (const auto& [k, c] : beta.terms())
    if (k.form_degree() != 1 || k.weight() < 3 || k.hbar < 0)
      throw UsageError("shift must be a one-form of weight at least 3");
  WeylTrunc wt = working(p.trunc);
  const SymplecticModel& m = p.model;
  // nabla B + B*B with B = beta / (i hbar)
  WeylForm quad = moyal(m, p.F, beta, wt) + moyal(m, beta, p.F, wt) + moyal(m, beta, beta, wt);
  WeylForm inner = base_d(beta) + fiber_delta(beta) + divide_by_ihbar(quad);
  FedosovPair q = p;
  q.c = (p.c + divide_by_ihbar(inner)).truncated(p.trunc);
  q.F = (p.F + beta.y_dependent_part()).truncated(wt);
  return {q, divide_by_ihbar(beta.y_independent_part()).truncated(p.trunc)};
}

WeylForm random_weyl(Rng& rng, int n, int form_degree, int lo, const WeylTrunc& t,
                     int density_pct) {
  int dim = 2 * n;
  WeylForm r(n);
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    if (popcount(mask) != form_degree) continue;
    for (int h = 0; h <= t.max_hbar; ++h) {
      for_each_exponent(dim, t.max_base, [&](const std::vector<int>& xe) {
        for_each_exponent(dim, t.max_weight - 2 * h - form_degree - sum(xe),
                          [&](const std::vector<int>& ye) {
          WeylKey k{mask, xe, h, ye};
          if (k.weight() < lo || !rng.coin(density_pct, 100)) return;
          r.add(k, rng.scalar(3, 2));
        });
      });
    }
  }
  return r;
}

// ---- contractions

Matrix rw_form(const Tensor4& R, const SymplecticModel& m) {
  int dim = m.dim();
  if (int(R.size()) != dim) throw UsageError("curvature tensor has the wrong size");
  int cols = -1;
  for (const auto& Ra : R) {
    if (int(Ra.size()) != dim) throw UsageError("curvature tensor has the wrong size");
    for (const auto& Rab : Ra) {
      if (int(Rab.size()) != dim) throw UsageError("curvature tensor has the wrong size");
      for (const auto& Rabi : Rab) {
        if (cols < 0) cols = int(Rabi.size());
        if (int(Rabi.size()) != cols || cols == 0)
          throw UsageError("curvature tensor has the wrong size");
      }
    }
  }
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < cols; ++j)
          if (R[a][b][i][j] != R[b][a][i][j])
            throw DomainError("curvature tensor is not symmetric in its first two indices");
  const Matrix& P = m.poisson;
  Matrix S(cols, cols);
  for (int j = 0; j < cols; ++j)
    for (int l = 0; l < cols; ++l) {
      Scalar s;
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          for (int i = 0; i < dim; ++i) {
            const Scalar& r1 = R[a][b][i][j];
            if (r1.is_zero()) continue;
            for (int c = 0; c < dim; ++c) {
              if (P(a, c).is_zero()) continue;
              for (int d = 0; d < dim; ++d) {
                if (P(b, d).is_zero()) continue;
                for (int k = 0; k < dim; ++k)
                  if (!P(i, k).is_zero()) s += r1 * R[c][d][k][l] * P(a, c) * P(b, d) * P(i, k);
              }
            }
          }
      S(j, l) = s;
    }
  return S - S.transpose();
}

Matrix omega_pairing(const Matrix& alpha, const Matrix& beta, const SymplecticModel& m) {
  int dim = m.dim();
  if (alpha.rows() != dim || beta.rows() != dim || alpha.cols() != beta.cols())
    throw UsageError("pairing arguments have the wrong shape");
  Matrix S = alpha.transpose() * m.omega * beta;
  return S - S.transpose();
}

}  // namespace defq
