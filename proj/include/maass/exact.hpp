#pragma once

// Exact coefficient arithmetic: Gaussian rationals, Gaussian rationals times
// an integer power of pi, and finite sums of those with mixed pi powers.

#include <gmpxx.h>

#include <map>
#include <string>

#include "maass/numeric.hpp"

namespace maass {

mpq_class make_q(long num, long den = 1);
/// Parses "a" or "a/b".
mpq_class parse_q(const std::string& s);
Real q_to_real(const mpq_class& x);

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long re) : re_(re) {}  // NOLINT(implicit)
  GaussRational(mpq_class re, mpq_class im = 0);

  static GaussRational i() { return GaussRational(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational operator-() const;
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  /// Throws std::domain_error on division by zero.
  GaussRational& operator/=(const GaussRational& o);
  GaussRational conj() const { return GaussRational(re_, -im_); }
  GaussRational inverse() const;
  GaussRational pow(long k) const;

  bool operator==(const GaussRational& o) const {
    return re_ == o.re_ && im_ == o.im_;
  }
  bool operator!=(const GaussRational& o) const { return !(*this == o); }

  Complex to_complex() const;
  std::string to_string() const;

 private:
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

GaussRational operator+(GaussRational a, const GaussRational& b);
GaussRational operator-(GaussRational a, const GaussRational& b);
GaussRational operator*(GaussRational a, const GaussRational& b);
GaussRational operator/(GaussRational a, const GaussRational& b);
/// i^k for any integer k.
GaussRational i_pow(long k);

/// (a + bi) * pi^pi_exp. Zero is canonical with pi_exp = 0.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long re) : value_(re) {}  // NOLINT(implicit)
  ExactScalar(GaussRational value, int pi_exp = 0);
  ExactScalar(mpq_class re, mpq_class im, int pi_exp);

  static ExactScalar pi_power(int k) { return ExactScalar(GaussRational(1), k); }

  const GaussRational& value() const { return value_; }
  const mpq_class& re() const { return value_.re(); }
  const mpq_class& im() const { return value_.im(); }
  int pi_exp() const { return pi_exp_; }
  bool is_zero() const { return value_.is_zero(); }

  ExactScalar operator-() const;
  /// Throws MixedPiPower when both sides are nonzero with different pi powers.
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);
  ExactScalar inverse() const;
  ExactScalar pow(long k) const;
  ExactScalar conj() const { return ExactScalar(value_.conj(), pi_exp_); }

  bool operator==(const ExactScalar& o) const {
    return value_ == o.value_ && pi_exp_ == o.pi_exp_;
  }
  bool operator!=(const ExactScalar& o) const { return !(*this == o); }

  Complex to_complex() const;
  std::string to_string() const;

 private:
  void canonicalize();
  GaussRational value_;
  int pi_exp_ = 0;
};

ExactScalar operator+(ExactScalar a, const ExactScalar& b);
ExactScalar operator-(ExactScalar a, const ExactScalar& b);
ExactScalar operator*(ExactScalar a, const ExactScalar& b);
ExactScalar operator/(ExactScalar a, const ExactScalar& b);

/// Finite sum over pi powers of Gaussian rationals.
class PiPolynomial {
 public:
  PiPolynomial() = default;
  PiPolynomial(const ExactScalar& s);  // NOLINT(implicit)

  const std::map<int, GaussRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when every coefficient has zero imaginary part.
  bool is_real() const;

  PiPolynomial operator-() const;
  PiPolynomial& operator+=(const PiPolynomial& o);
  PiPolynomial& operator-=(const PiPolynomial& o);
  PiPolynomial& operator*=(const PiPolynomial& o);

  bool operator==(const PiPolynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const PiPolynomial& o) const { return !(*this == o); }

  Complex evaluate() const;
  std::string to_string() const;

 private:
  void add_term(int pi_exp, const GaussRational& c);
  std::map<int, GaussRational> terms_;
};

PiPolynomial operator+(PiPolynomial a, const PiPolynomial& b);
PiPolynomial operator-(PiPolynomial a, const PiPolynomial& b);
PiPolynomial operator*(PiPolynomial a, const PiPolynomial& b);

mpz_class binomial(long n, long k);
mpz_class factorial(long n);

}  // namespace maass
