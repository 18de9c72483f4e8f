#include "maass/exact.hpp"

#include <stdexcept>

namespace maass {

mpq_class make_q(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class parse_q(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InvalidArgument("not a rational: " + s);
  if (sgn(q.get_den()) == 0) throw InvalidArgument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Real q_to_real(const mpq_class& x) {
  // Numerator and denominator may exceed double range; go through strings.
  const Real num(x.get_num().get_str());
  const Real den(x.get_den().get_str());
  return num / den;
}

// ---------------------------------------------------------------- GaussRational

GaussRational::GaussRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational GaussRational::operator-() const { return GaussRational(-re_, -im_); }

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussRational GaussRational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (sgn(im_) == 0) return GaussRational(1 / re_, 0);
  const mpq_class n = re_ * re_ + im_ * im_;
  return GaussRational(re_ / n, -im_ / n);
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  return *this *= o.inverse();
}

GaussRational GaussRational::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  GaussRational result(1), base(*this);
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Complex GaussRational::to_complex() const {
  return Complex(q_to_real(re_), q_to_real(im_));
}

std::string GaussRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "*i";
  return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_.get_str() + "*i)";
}

GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

GaussRational i_pow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return GaussRational(1);
    case 1: return GaussRational(0, 1);
    case 2: return GaussRational(-1);
    default: return GaussRational(0, -1);
  }
}

// ---------------------------------------------------------------- ExactScalar

ExactScalar::ExactScalar(GaussRational value, int pi_exp)
    : value_(std::move(value)), pi_exp_(pi_exp) {
  canonicalize();
}

ExactScalar::ExactScalar(mpq_class re, mpq_class im, int pi_exp)
    : value_(std::move(re), std::move(im)), pi_exp_(pi_exp) {
  canonicalize();
}

void ExactScalar::canonicalize() {
  if (value_.is_zero()) pi_exp_ = 0;
}

ExactScalar ExactScalar::operator-() const { return ExactScalar(-value_, pi_exp_); }

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (pi_exp_ != o.pi_exp_) {
    throw MixedPiPower("cannot add pi^" + std::to_string(pi_exp_) + " and pi^" +
                       std::to_string(o.pi_exp_) + " terms");
  }
  value_ += o.value_;
  canonicalize();
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  value_ *= o.value_;
  pi_exp_ += o.pi_exp_;
  canonicalize();
  return *this;
}

ExactScalar ExactScalar::inverse() const {
  return ExactScalar(value_.inverse(), -pi_exp_);
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  return *this *= o.inverse();
}

ExactScalar ExactScalar::pow(long k) const {
  if (is_zero()) {
    if (k <= 0) throw std::domain_error("non-positive power of zero");
    return *this;
  }
  return ExactScalar(value_.pow(k), static_cast<int>(pi_exp_ * k));
}

Complex ExactScalar::to_complex() const {
  return value_.to_complex() * boost::multiprecision::pow(pi(), pi_exp_);
}

std::string ExactScalar::to_string() const {
  std::string s = value_.to_string();
  if (pi_exp_ != 0) s += "*pi^" + std::to_string(pi_exp_);
  return s;
}

ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

// ---------------------------------------------------------------- PiPolynomial

PiPolynomial::PiPolynomial(const ExactScalar& s) {
  add_term(s.pi_exp(), s.value());
}

void PiPolynomial::add_term(int pi_exp, const GaussRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(pi_exp);
  if (it == terms_.end()) {
    terms_.emplace(pi_exp, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool PiPolynomial::is_real() const {
  for (const auto& [k, c] : terms_) {
    if (!c.is_real()) return false;
  }
  return true;
}

PiPolynomial PiPolynomial::operator-() const {
  PiPolynomial r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

PiPolynomial& PiPolynomial::operator+=(const PiPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

PiPolynomial& PiPolynomial::operator-=(const PiPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

PiPolynomial& PiPolynomial::operator*=(const PiPolynomial& o) {
  PiPolynomial r;
  for (const auto& [k1, c1] : terms_) {
    for (const auto& [k2, c2] : o.terms_) r.add_term(k1 + k2, c1 * c2);
  }
  return *this = std::move(r);
}

Complex PiPolynomial::evaluate() const {
  Complex sum(0);
  for (const auto& [k, c] : terms_) sum += c.to_complex() * pow(pi(), k);
  return sum;
}

std::string PiPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += c.to_string();
    if (k != 0) s += "*pi^" + std::to_string(k);
  }
  return s;
}

PiPolynomial operator+(PiPolynomial a, const PiPolynomial& b) { return a += b; }
PiPolynomial operator-(PiPolynomial a, const PiPolynomial& b) { return a -= b; }
PiPolynomial operator*(PiPolynomial a, const PiPolynomial& b) { return a *= b; }

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

mpz_class factorial(long n) {
  if (n < 0) throw std::domain_error("negative factorial");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace maass
