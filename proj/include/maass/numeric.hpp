#pragma once

// Working-precision number types and the small value types shared by the
// numerical modules.

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "maass/errors.hpp"

namespace maass {

using Real = boost::multiprecision::float128;
using Complex = boost::multiprecision::complex128;

/// Decimal digits carried by Real.
inline constexpr int kMaxWorkingDigits = 33;

const Real& pi();
Complex I();
/// e(x) := exp(2 pi i x).
Complex e2pi(const Complex& x);
Complex cexp(const Complex& x);
/// Principal branch square root.
Complex csqrt(const Complex& x);

Real to_real(double x);
Real parse_real(const std::string& s);
std::string format_real(const Real& x, int digits = 20);
std::string format_complex(const Complex& z, int digits = 20);

struct Precision {
  /// Working digits; series are truncated so the dropped tail is below
  /// 10^-digits relative to the largest retained term.
  int digits = 30;
  /// Tolerance used for pass/fail decisions.
  double tolerance = 1e-8;

  /// Throws PrecisionUnreachable when digits exceed what Real carries.
  void validate() const;
  Real sum_tolerance() const;
};

struct TauPoint {
  Real u;
  Real v;

  TauPoint(Real u_, Real v_);
  static TauPoint from_complex(const Complex& tau);
  Complex value() const { return Complex(u, v); }
  Complex q() const;
};

struct ModularMatrix {
  long a = 1, b = 0, c = 0, d = 1;

  ModularMatrix() = default;
  /// Throws InvalidArgument unless ad - bc = 1.
  ModularMatrix(long a_, long b_, long c_, long d_);

  static ModularMatrix S() { return {0, -1, 1, 0}; }
  static ModularMatrix T(long k = 1) { return {1, k, 0, 1}; }

  bool is_gamma0_2() const { return c % 2 == 0; }
  bool is_gamma0(long level) const { return c % level == 0; }
  Complex act(const Complex& tau) const;
  Complex j_factor(const Complex& tau) const;  // c tau + d
  ModularMatrix operator*(const ModularMatrix& o) const;
  long max_abs_entry() const;
  std::string to_string() const;
};

/// Deterministic sample-point generator. std::mt19937_64 output is fixed by
/// the standard; the mapping to ranges is done here because the standard
/// distributions are implementation defined.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  long uniform_int(long lo, long hi);  // inclusive

 private:
  std::mt19937_64 engine_;
};

/// Distance from z to the lattice Z tau + Z.
Real lattice_distance(const Complex& z, const Complex& tau);

}  // namespace maass
