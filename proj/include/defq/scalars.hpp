// Exact coefficients: Gaussian rationals and truncated Laurent series in hbar.
#ifndef DEFQ_SCALARS_HPP
#define DEFQ_SCALARS_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace defq {

// bad arguments, shape mismatches, mixed truncation orders
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// mathematically impossible request (non-invertible, pole cap, non-nilpotent)
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// malformed textual input; path is a JSON pointer when known
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& msg)
      : std::runtime_error(path.empty() ? msg : path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

using Rational = mpq_class;

// strict: "p" or "p/q" with q > 0 and gcd(p,q) = 1
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);
// canonicalized p/q
Rational frac(long p, long q);

class Scalar {
 public:
  Scalar() = default;
  template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
  Scalar(I v) : re_(static_cast<long>(v)) {}
  Scalar(const Rational& re) : re_(re) {}
  Scalar(const Rational& re, const Rational& im) : re_(re), im_(im) {}

  static Scalar imag_unit() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const { return Scalar(-re_, -im_); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

Scalar parse_scalar(const std::string& text);  // real part only, same grammar as parse_rational

// Pole cap for Laurent tails; default 1.
void set_max_pole_order(int p);
int max_pole_order();

// Element of the truncated Laurent ring: coefficients of hbar^k for
// -pole <= k <= trunc, stored as coeffs[k + pole].
class Series {
 public:
  Series() : c_(1) {}
  explicit Series(int trunc);
  Series(int trunc, const Scalar& constant);
  static Series monomial(int trunc, int power, const Scalar& c);
  static Series from_coeffs(int pole, int trunc, std::vector<Scalar> coeffs);

  int pole() const { return pole_; }
  int trunc() const { return trunc_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& coeff(int k) const;
  void set_coeff(int k, const Scalar& v);
  void add_to_coeff(int k, const Scalar& v);

  bool is_zero() const;
  // lowest power with nonzero coefficient; trunc+1 for zero
  int valuation() const;
  // no pole part and vanishing constant term
  bool in_maximal_ideal() const { return valuation() >= 1; }
  Series with_trunc(int trunc) const;  // drop or zero-extend

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Scalar& s);
  Series operator-() const;
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Scalar& s) { return a *= s; }
  friend Series operator*(const Scalar& s, Series a) { return a *= s; }
  friend Series operator*(const Series& a, const Series& b);
  friend bool operator==(const Series& a, const Series& b);
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void normalize();
  int pole_ = 0;
  int trunc_ = 0;
  std::vector<Scalar> c_;
};

Series series_invert(const Series& a);
Series series_exp(const Series& x);  // x in the maximal ideal
Series series_log(const Series& u);  // u - 1 in the maximal ideal
void require_same_trunc(const Series& a, const Series& b);

}  // namespace defq

#endif
