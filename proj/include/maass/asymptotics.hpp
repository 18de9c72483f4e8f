#pragma once

// Higher Euler numbers, the coefficients a_r of the small-t expansion of the
// specialized characters, and the quadratures used to check them.

#include <map>
#include <utility>
#include <vector>

#include "maass/exact.hpp"
#include "maass/numeric.hpp"

namespace maass {

/// Coefficients c_0..c_k of B_k(z) = sum c_j z^j, from
/// x e^(zx) / (e^x - 1) = sum B_k(z) x^k / k!.
std::vector<mpq_class> bernoulli_poly(int k);
/// Coefficients of E_k(z), from 2 e^(zx) / (e^x + 1) = sum E_k(z) x^k / k!.
std::vector<mpq_class> euler_poly(int k);
mpq_class eval_poly(const std::vector<mpq_class>& c, const mpq_class& z);
/// Classical Euler number 2^k E_k(1/2): 1, 0, -1, 0, 5, ...
mpq_class euler_number(int k);

/// Exact moment int x^k cosh(pi x)^-n dx. For odd n >= 3 the recurrence
/// mixes pi^0 and pi^-2 terms, so the value is a PiPolynomial.
PiPolynomial higher_euler(int k, int n);

class HigherEulerTable {
 public:
  HigherEulerTable(int max_k, int max_n);

  const PiPolynomial& at(int k, int n) const;
  int max_k() const { return max_k_; }
  int max_n() const { return max_n_; }
  /// Set after construction: odd-k entries vanish, every entry is real and
  /// the n = 1, 2 rows match the closed forms.
  bool consistent() const { return consistent_; }

 private:
  int max_k_, max_n_;
  std::map<std::pair<int, int>, PiPolynomial> entries_;
  bool consistent_ = false;
};

/// int_R x^k / cosh(pi x)^n dx by Gauss-Kronrod on [-L, L], doubling L until
/// stable. Throws QuadratureNotConverged.
Real higher_euler_quadrature(int k, int n, const Precision& prec = {});

/// int_R e^(2 pi i z x) / cosh(pi x)^2 dx = 4z / (e^(pi z) - e^(-pi z)); 2/pi at z = 0.
Real sech_square_fourier(const Real& z);
Real sech_square_fourier_quadrature(const Real& z, const Precision& prec = {});

/// (-pi)^r sum_k C(r,k) (m-n)^k (2 i ell)^(r-k) E_{k+r,n}.
PiPolynomial a_coeff(int r, long m, long n, long ell);

/// I_ell(t) = int_R e^(pi (n-m) t u^2 - 2 pi i ell u t) / cosh(pi u)^n du (real part).
Real mordell_quadrature(long ell, long m, long n, const Real& t, const Precision& prec = {});

struct AsymptoticExpansion {
  long m = 0, n = 0, ell = 0;
  int N = 0;
  std::vector<PiPolynomial> coeffs;  // a_0 .. a_N
  mpq_class t_exponent;              // (n-m+1)/12, multiplies pi t
  mpq_class inv_t_exponent;          // (m+2n-1)/12, multiplies pi / t

  static AsymptoticExpansion build(long m, long n, long ell, int N);
  /// sum_{r<=N} a_r t^r / r!
  Real partial_sum(const Real& t) const;
  /// e^(pi t (n-m+1)/12 + pi (m+2n-1)/(12 t)) sqrt(t) / 2^n
  Real prefactor(const Real& t) const;
  Real evaluate(const Real& t) const { return prefactor(t) * partial_sum(t); }
};

Real asymptotic_eval(long m, long n, long ell, int N, const Real& t);

}  // namespace maass
