#include "maass/asymptotics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>

namespace maass {

namespace {

using Poly = std::vector<mpq_class>;

Poly monomial(int k) {
  Poly p(static_cast<size_t>(k) + 1, 0);
  p.back() = 1;
  return p;
}

void axpy(Poly& y, const mpq_class& a, const Poly& x) {
  if (y.size() < x.size()) y.resize(x.size(), 0);
  for (size_t j = 0; j < x.size(); ++j) y[j] += a * x[j];
}

PiPolynomial pi_scalar(const GaussRational& c, int pi_exp) {
  return PiPolynomial(ExactScalar(c, pi_exp));
}

PiPolynomial higher_euler_memo(int k, int n, std::map<std::pair<int, int>, PiPolynomial>& memo) {
  if (k < 0 || k % 2 == 1) return {};
  if (n < 1) throw InvalidArgument("higher Euler numbers need n >= 1");
  auto it = memo.find({k, n});
  if (it != memo.end()) return it->second;
  PiPolynomial r;
  if (n == 1) {
    r = pi_scalar(GaussRational(0, -2).pow(-k) * GaussRational(euler_number(k)), 0);
  } else if (n == 2) {
    r = pi_scalar(GaussRational(2) * i_pow(-k) * GaussRational(eval_poly(bernoulli_poly(k), make_q(1, 2))), -1);
  } else {
    // Integration by parts against (sech^n)'' fixes the minus sign.
    const long p = n - 2;
    r = pi_scalar(GaussRational(make_q(p, p + 1)), 0) * higher_euler_memo(k, n - 2, memo);
    if (k >= 2) {
      r -= pi_scalar(GaussRational(make_q(static_cast<long>(k) * (k - 1), p * (p + 1))), -2) *
           higher_euler_memo(k - 2, n - 2, memo);
    }
  }
  memo.emplace(std::make_pair(k, n), r);
  return r;
}

Real tolerance_of(const Precision& prec) {
  prec.validate();
  return boost::multiprecision::pow(Real(10), -prec.digits);
}

// Integral over R of an integrand bounded by C |x|^k cosh(pi x)^-n, with L
// doubled until two successive truncations agree.
Real integrate_decaying(const std::function<Real(const Real&)>& f, int k, int n, const Real& tol,
                        const char* what) {
  using boost::math::quadrature::gauss_kronrod;
  // Tail bound: int_L^inf x^k 2^n e^(-n pi x) dx <= 2^(n+1) L^k e^(-n pi L) / (n pi) for L >= 2k/(n pi).
  Real L = 1;
  auto tail = [&](const Real& x) {
    return boost::multiprecision::pow(Real(2), n + 1) * boost::multiprecision::pow(x, k) *
           exp(-n * pi() * x) / (n * pi());
  };
  while (L < Real(2 * k) / (n * pi()) || tail(L) > tol / 10) L += Real(0.5);

  auto integrate = [&](const Real& len) {
    Real err = 0, total = 0;
    // Unit panels keep the adaptive scheme away from its depth limit.
    const long panels = static_cast<long>(ceil(len));
    for (long j = 0; j < panels; ++j) {
      const Real a = len * j / panels, b = len * (j + 1) / panels;
      Real e1 = 0, e2 = 0;
      total += gauss_kronrod<Real, 31>::integrate(f, a, b, 10, tol / 10, &e1);
      total += gauss_kronrod<Real, 31>::integrate(f, -b, -a, 10, tol / 10, &e2);
      err += e1 + e2;
    }
    return std::make_pair(total, err);
  };
  const auto [v1, e1] = integrate(L);
  const auto [v2, e2] = integrate(2 * L);
  const Real scale = std::max(Real(1), abs(v2));
  if (abs(v1 - v2) > tol * scale || e2 > tol * scale) {
    throw QuadratureNotConverged(std::string(what) + ": estimated error " +
                                 format_real(std::max(abs(v1 - v2), e2), 3) + " above tolerance");
  }
  return v2;
}

Real sech_pow(const Real& x, int n) {
  const Real e = exp(-pi() * abs(x));
  return boost::multiprecision::pow(2 * e / (1 + e * e), n);
}

}  // namespace

std::vector<mpq_class> bernoulli_poly(int k) {
  if (k < 0) throw InvalidArgument("bernoulli_poly needs k >= 0");
  // sum_{j<=k} C(k+1, j) B_j(z) = (k+1) z^k
  std::vector<Poly> B;
  for (int s = 0; s <= k; ++s) {
    Poly p = monomial(s);
    p.back() = s + 1;
    for (int j = 0; j < s; ++j) axpy(p, -mpq_class(binomial(s + 1, j)), B[static_cast<size_t>(j)]);
    for (auto& c : p) c /= s + 1;
    B.push_back(std::move(p));
  }
  return B.back();
}

std::vector<mpq_class> euler_poly(int k) {
  if (k < 0) throw InvalidArgument("euler_poly needs k >= 0");
  // E_k(z) + sum_{j<=k} C(k, j) E_j(z) = 2 z^k
  std::vector<Poly> E;
  for (int s = 0; s <= k; ++s) {
    Poly p = monomial(s);
    for (int j = 0; j < s; ++j) axpy(p, -mpq_class(binomial(s, j)) / 2, E[static_cast<size_t>(j)]);
    E.push_back(std::move(p));
  }
  return E.back();
}

mpq_class eval_poly(const std::vector<mpq_class>& c, const mpq_class& z) {
  mpq_class r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
  return r;
}

mpq_class euler_number(int k) {
  mpq_class r = eval_poly(euler_poly(k), make_q(1, 2));
  r *= mpq_class(mpz_class(1) << k);
  return r;
}

PiPolynomial higher_euler(int k, int n) {
  std::map<std::pair<int, int>, PiPolynomial> memo;
  return higher_euler_memo(k, n, memo);
}

HigherEulerTable::HigherEulerTable(int max_k, int max_n) : max_k_(max_k), max_n_(max_n) {
  if (max_k < 0 || max_n < 1) throw InvalidArgument("table needs max_k >= 0, max_n >= 1");
  std::map<std::pair<int, int>, PiPolynomial> memo;
  for (int n = 1; n <= max_n; ++n)
    for (int k = 0; k <= max_k; ++k) entries_[{k, n}] = higher_euler_memo(k, n, memo);

  consistent_ = true;
  for (const auto& [key, v] : entries_) {
    const auto [k, n] = key;
    if (k % 2 == 1 && !v.is_zero()) consistent_ = false;
    if (!v.is_real()) consistent_ = false;
    if (k % 2 == 1) continue;
    if (n == 1) {
      // (-2i)^-k = (-4)^(-k/2) for even k
      const mpq_class w = euler_number(k) / mpq_class(mpz_class(1) << k) *
                          ((k / 2) % 2 == 0 ? 1 : -1);
      if (v != PiPolynomial(ExactScalar(GaussRational(w), 0))) consistent_ = false;
    } else if (n == 2) {
      const mpq_class w = 2 * eval_poly(bernoulli_poly(k), make_q(1, 2)) * ((k / 2) % 2 == 0 ? 1 : -1);
      if (v != PiPolynomial(ExactScalar(GaussRational(w), -1))) consistent_ = false;
    }
  }
}

const PiPolynomial& HigherEulerTable::at(int k, int n) const {
  auto it = entries_.find({k, n});
  if (it == entries_.end()) throw InvalidArgument("higher Euler table index out of range");
  return it->second;
}

Real higher_euler_quadrature(int k, int n, const Precision& prec) {
  if (k < 0 || n < 1) throw InvalidArgument("quadrature needs k >= 0, n >= 1");
  const Real tol = tolerance_of(prec);
  auto f = [k, n](const Real& x) { return boost::multiprecision::pow(x, k) * sech_pow(x, n); };
  return integrate_decaying(f, k, n, tol, "higher Euler quadrature");
}

Real sech_square_fourier(const Real& z) {
  if (z == 0) return 2 / pi();
  return 2 * z / sinh(pi() * z);
}

Real sech_square_fourier_quadrature(const Real& z, const Precision& prec) {
  const Real tol = tolerance_of(prec);
  auto f = [z](const Real& x) { return cos(2 * pi() * z * x) * sech_pow(x, 2); };
  return integrate_decaying(f, 0, 2, tol, "sech^2 Fourier quadrature");
}

PiPolynomial a_coeff(int r, long m, long n, long ell) {
  if (r < 0) throw InvalidArgument("a_r needs r >= 0");
  if (!(m > n && n >= 1)) throw InvalidArgument("a_r requires m > n >= 1");
  std::map<std::pair<int, int>, PiPolynomial> memo;
  PiPolynomial sum;
  const GaussRational two_i_ell(0, ell);
  for (int k = 0; k <= r; ++k) {
    const PiPolynomial e = higher_euler_memo(k + r, static_cast<int>(n), memo);
    if (e.is_zero()) continue;
    GaussRational c(mpq_class(binomial(r, k)));
    c *= GaussRational(m - n).pow(k);
    if (r - k > 0) c *= (GaussRational(2) * two_i_ell).pow(r - k);
    sum += pi_scalar(c, 0) * e;
  }
  return pi_scalar(GaussRational(r % 2 == 0 ? 1 : -1), r) * sum;
}

Real mordell_quadrature(long ell, long m, long n, const Real& t, const Precision& prec) {
  if (!(t > 0)) throw InvalidArgument("I_ell(t) needs t > 0");
  if (!(m > n && n >= 1)) throw InvalidArgument("I_ell(t) requires m > n >= 1");
  const Real tol = tolerance_of(prec);
  const int ni = static_cast<int>(n);
  auto f = [=](const Real& u) {
    return exp(-pi() * (m - n) * t * u * u) * cos(2 * pi() * ell * u * t) * sech_pow(u, ni);
  };
  return integrate_decaying(f, 0, ni, tol, "I_ell(t) quadrature");
}

AsymptoticExpansion AsymptoticExpansion::build(long m, long n, long ell, int N) {
  if (N < 0) throw InvalidArgument("expansion order must be >= 0");
  AsymptoticExpansion a;
  a.m = m;
  a.n = n;
  a.ell = ell;
  a.N = N;
  for (int r = 0; r <= N; ++r) a.coeffs.push_back(a_coeff(r, m, n, ell));
  a.t_exponent = make_q(n - m + 1, 12);
  a.inv_t_exponent = make_q(m + 2 * n - 1, 12);
  return a;
}

Real AsymptoticExpansion::partial_sum(const Real& t) const {
  Real sum = 0, tr = 1;
  for (size_t r = 0; r < coeffs.size(); ++r) {
    if (r > 0) tr *= t / static_cast<long>(r);
    sum += coeffs[r].evaluate().real() * tr;
  }
  return sum;
}

Real AsymptoticExpansion::prefactor(const Real& t) const {
  const Real ex = pi() * t * q_to_real(t_exponent) + pi() / t * q_to_real(inv_t_exponent);
  return exp(ex) * sqrt(t) / boost::multiprecision::pow(Real(2), static_cast<int>(n));
}

Real asymptotic_eval(long m, long n, long ell, int N, const Real& t) {
  if (!(t > 0)) throw InvalidArgument("asymptotic expansion needs t > 0");
  return AsymptoticExpansion::build(m, n, ell, N).evaluate(t);
}

}  // namespace maass
