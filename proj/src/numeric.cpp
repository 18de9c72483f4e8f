#include "maass/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>

namespace maass {

const Real& pi() {
  static const Real value = boost::math::constants::pi<Real>();
  return value;
}

Complex I() { return Complex(Real(0), Real(1)); }

Complex cexp(const Complex& x) {
  const Real r = exp(x.real());
  return Complex(r * cos(x.imag()), r * sin(x.imag()));
}

Complex e2pi(const Complex& x) {
  return cexp(Complex(Real(-2) * pi() * x.imag(), Real(2) * pi() * x.real()));
}

Complex csqrt(const Complex& x) { return sqrt(x); }

Real to_real(double x) { return Real(x); }

Real parse_real(const std::string& s) { return Real(s); }

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string format_complex(const Complex& z, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << abs(z.imag()) << "i";
  return os.str();
}

void Precision::validate() const {
  if (digits < 4) throw InvalidArgument("working digits must be at least 4");
  if (digits > kMaxWorkingDigits) {
    throw PrecisionUnreachable("requested " + std::to_string(digits) +
                               " working digits; at most " +
                               std::to_string(kMaxWorkingDigits) + " available");
  }
  if (!(tolerance > 0)) throw InvalidArgument("tolerance must be positive");
}

Real Precision::sum_tolerance() const { return pow(Real(10), -digits); }

TauPoint::TauPoint(Real u_, Real v_) : u(std::move(u_)), v(std::move(v_)) {
  if (!(v > 0)) throw InvalidArgument("tau must lie in the upper half plane");
}

TauPoint TauPoint::from_complex(const Complex& tau) {
  return TauPoint(tau.real(), tau.imag());
}

Complex TauPoint::q() const { return e2pi(value()); }

ModularMatrix::ModularMatrix(long a_, long b_, long c_, long d_)
    : a(a_), b(b_), c(c_), d(d_) {
  if (a * d - b * c != 1) {
    throw InvalidArgument("matrix " + to_string() + " has determinant != 1");
  }
}

Complex ModularMatrix::act(const Complex& tau) const {
  return (Real(a) * tau + Real(b)) / (Real(c) * tau + Real(d));
}

Complex ModularMatrix::j_factor(const Complex& tau) const {
  return Real(c) * tau + Real(d);
}

ModularMatrix ModularMatrix::operator*(const ModularMatrix& o) const {
  return ModularMatrix(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                       c * o.b + d * o.d);
}

long ModularMatrix::max_abs_entry() const {
  return std::max({std::labs(a), std::labs(b), std::labs(c), std::labs(d)});
}

std::string ModularMatrix::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ";" +
         std::to_string(c) + "," + std::to_string(d) + ")";
}

SampleRng::SampleRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SampleRng::next() { return engine_(); }

double SampleRng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

long SampleRng::uniform_int(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(next() % span);
}

Real lattice_distance(const Complex& z, const Complex& tau) {
  const Real v = tau.imag();
  const Real a = z.imag() / v;
  Real best = -1;
  const long a0 = static_cast<long>(floor(a));
  for (long al = a0 - 1; al <= a0 + 2; ++al) {
    const Complex w = z - Real(al) * tau;
    const long b0 = static_cast<long>(floor(w.real()));
    for (long be = b0 - 1; be <= b0 + 2; ++be) {
      const Real dist = abs(w - Complex(Real(be), Real(0)));
      if (best < 0 || dist < best) best = dist;
    }
  }
  return best;
}

}  // namespace maass
