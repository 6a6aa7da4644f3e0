#include "defq/scalars.hpp"

#include <atomic>
#include <cctype>
#include <sstream>

namespace defq {

namespace {

std::atomic<int> g_max_pole{1};

bool is_digit_run(const std::string& s, size_t b, size_t e) {
  if (b >= e) return false;
  for (size_t i = b; i < e; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  // no leading zeros except the literal 0
  return !(s[b] == '0' && e - b > 1);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  size_t b = 0;
  bool neg = false;
  if (!text.empty() && text[0] == '-') {
    neg = true;
    b = 1;
  }
  size_t slash = text.find('/', b);
  size_t num_end = slash == std::string::npos ? text.size() : slash;
  if (!is_digit_run(text, b, num_end))
    throw ParseError("", "malformed rational '" + text + "'");
  mpz_class p(text.substr(b, num_end - b));
  mpz_class q(1);
  if (slash != std::string::npos) {
    if (!is_digit_run(text, slash + 1, text.size()))
      throw ParseError("", "malformed rational '" + text + "'");
    q = mpz_class(text.substr(slash + 1));
    if (q == 0) throw ParseError("", "zero denominator in '" + text + "'");
  }
  if (neg && p == 0) throw ParseError("", "negative zero in '" + text + "'");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw ParseError("", "rational '" + text + "' is not reduced");
  Rational r(neg ? mpz_class(-p) : p, q);
  return r;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational frac(long p, long q) {
  if (q == 0) throw DomainError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Scalar parse_scalar(const std::string& text) { return Scalar(parse_rational(text)); }

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("division by zero scalar");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  Rational n = o.re_ * o.re_ + o.im_ * o.im_;
  Scalar inv(o.re_ / n, -o.im_ / n);
  return *this *= inv;
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  std::string s = re_.get_str();
  s += sgn(im_) > 0 ? "+" : "";
  return s + im_.get_str() + "i";
}

void set_max_pole_order(int p) {
  if (p < 0) throw UsageError("pole cap must be non-negative");
  g_max_pole = p;
}

int max_pole_order() { return g_max_pole; }

Series::Series(int trunc) : trunc_(trunc), c_(trunc + 1) {
  if (trunc < 0) throw UsageError("truncation order must be non-negative");
}

Series::Series(int trunc, const Scalar& constant) : Series(trunc) { c_[0] = constant; }

Series Series::monomial(int trunc, int power, const Scalar& c) {
  Series s(trunc);
  s.set_coeff(power, c);
  return s;
}

Series Series::from_coeffs(int pole, int trunc, std::vector<Scalar> coeffs) {
  if (pole < 0 || trunc < 0) throw UsageError("pole and truncation must be non-negative");
  if (static_cast<int>(coeffs.size()) != pole + trunc + 1)
    throw UsageError("series needs pole+trunc+1 coefficients");
  Series s;
  s.pole_ = pole;
  s.trunc_ = trunc;
  s.c_ = std::move(coeffs);
  s.normalize();
  if (s.pole_ > max_pole_order()) throw DomainError("pole order exceeds configured cap");
  return s;
}

const Scalar& Series::coeff(int k) const {
  static const Scalar zero;
  if (k < -pole_ || k > trunc_) return zero;
  return c_[k + pole_];
}

void Series::set_coeff(int k, const Scalar& v) {
  if (k > trunc_) return;  // truncated away
  if (k < -pole_) {
    if (v.is_zero()) return;
    if (-k > max_pole_order()) throw DomainError("pole order exceeds configured cap");
    c_.insert(c_.begin(), -k - pole_, Scalar());
    pole_ = -k;
  }
  c_[k + pole_] = v;
  normalize();
}

void Series::add_to_coeff(int k, const Scalar& v) {
  if (k > trunc_ || v.is_zero()) return;
  if (k < -pole_) {
    set_coeff(k, v);
    return;
  }
  c_[k + pole_] += v;
  normalize();
}

bool Series::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

int Series::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<int>(i) - pole_;
  return trunc_ + 1;
}

Series Series::with_trunc(int trunc) const {
  Series s(trunc);
  for (int k = -pole_; k <= std::min(trunc, trunc_); ++k) s.set_coeff(k, coeff(k));
  return s;
}

void Series::normalize() {
  size_t drop = 0;
  while (pole_ - static_cast<int>(drop) > 0 && c_[drop].is_zero()) ++drop;
  if (drop) {
    c_.erase(c_.begin(), c_.begin() + drop);
    pole_ -= static_cast<int>(drop);
  }
}

void require_same_trunc(const Series& a, const Series& b) {
  if (a.trunc() != b.trunc())
    throw UsageError("mixed truncation orders " + std::to_string(a.trunc()) + " and " +
                     std::to_string(b.trunc()));
}

Series& Series::operator+=(const Series& o) {
  require_same_trunc(*this, o);
  if (o.pole_ > pole_) {
    c_.insert(c_.begin(), o.pole_ - pole_, Scalar());
    pole_ = o.pole_;
  }
  for (int k = -o.pole_; k <= trunc_; ++k) {
    const Scalar& v = o.c_[k + o.pole_];
    if (!v.is_zero()) c_[k + pole_] += v;
  }
  normalize();
  return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series& Series::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    c_.assign(trunc_ + 1, Scalar());
    pole_ = 0;
    return *this;
  }
  for (auto& x : c_)
    if (!x.is_zero()) x *= s;
  return *this;
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Series operator*(const Series& a, const Series& b) {
  require_same_trunc(a, b);
  int n = a.trunc_;
  Series r;
  r.trunc_ = n;
  r.pole_ = a.pole_ + b.pole_;
  r.c_.assign(r.pole_ + n + 1, Scalar());
  for (int i = -a.pole_; i <= n; ++i) {
    const Scalar& x = a.c_[i + a.pole_];
    if (x.is_zero()) continue;
    for (int j = -b.pole_; i + j <= n && j <= n; ++j) {
      const Scalar& y = b.c_[j + b.pole_];
      if (y.is_zero()) continue;
      r.c_[i + j + r.pole_] += x * y;
    }
  }
  r.normalize();
  if (r.pole_ > max_pole_order()) throw DomainError("pole order exceeds configured cap");
  return r;
}

bool operator==(const Series& a, const Series& b) {
  if (a.trunc_ != b.trunc_) return false;
  int lo = -std::max(a.pole_, b.pole_);
  for (int k = lo; k <= a.trunc_; ++k)
    if (a.coeff(k) != b.coeff(k)) return false;
  return true;
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = -pole_; k <= trunc_; ++k) {
    const Scalar& v = coeff(k);
    if (v.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << v.to_string() << ")";
    if (k != 0) os << "*h^" << k;
  }
  if (first) os << "0";
  os << " + O(h^" << trunc_ + 1 << ")";
  return os.str();
}

Series series_invert(const Series& a) {
  int n = a.trunc();
  int v = a.valuation();
  if (v > n) throw DomainError("zero series is not invertible");
  // a = h^v u with u(0) != 0; u known through order n - v
  int m = n + v;  // order needed for h^-v u^-1 through h^n
  if (m < 0) m = 0;
  std::vector<Scalar> u(m + 1), w(m + 1);
  for (int k = 0; k <= m; ++k) u[k] = a.coeff(k + v);
  Scalar inv0 = Scalar(1) / u[0];
  w[0] = inv0;
  for (int j = 1; j <= m; ++j) {
    Scalar acc;
    for (int i = 1; i <= j; ++i)
      if (!u[i].is_zero()) acc += u[i] * w[j - i];
    w[j] = -(acc * inv0);
  }
  if (v > max_pole_order()) throw DomainError("inverse needs pole order above configured cap");
  Series r(n);
  for (int j = 0; j <= m; ++j)
    if (!w[j].is_zero()) r.set_coeff(j - v, w[j]);
  return r;
}

Series series_exp(const Series& x) {
  if (!x.in_maximal_ideal()) throw DomainError("exp needs an argument in the maximal ideal");
  int n = x.trunc();
  Series result(n, Scalar(1));
  Series term(n, Scalar(1));
  for (int k = 1; k <= n; ++k) {
    term = term * x;
    term *= Scalar(frac(1, k));
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

Series series_log(const Series& u) {
  int n = u.trunc();
  Series y = u - Series(n, Scalar(1));
  if (!y.in_maximal_ideal()) throw DomainError("log needs an argument in 1 + maximal ideal");
  Series result(n);
  Series pw(n, Scalar(1));
  for (int k = 1; k <= n; ++k) {
    pw = pw * y;
    if (pw.is_zero()) break;
    Series t = pw * Scalar(frac(k % 2 ? 1 : -1, k));
    result += t;
  }
  return result;
}

}  // namespace defq
