#include "maass/special.hpp"

#include "maass/exact.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <vector>

namespace maass {

namespace {

Real digits_log(int digits) { return Real(std::log(10.0) * (digits + 5)); }

// Terms exp(alpha k^2 + beta k + gamma) for k = lo..hi by multiplicative
// recurrence; visit(k, term).
template <class Visit>
void quad_exp_terms(long lo, long hi, const Complex& alpha, const Complex& beta, const Complex& gamma,
                    Visit&& visit) {
  const Real kl(lo);
  Complex term = cexp(alpha * kl * kl + beta * kl + gamma);
  Complex ratio = cexp(alpha * (2 * kl + 1) + beta);
  const Complex ratio_step = cexp(2 * alpha);
  for (long k = lo; k <= hi; ++k) {
    visit(k, term);
    term *= ratio;
    ratio *= ratio_step;
  }
}

std::pair<long, long> window_union(std::pair<long, long> a, std::pair<long, long> b) {
  return {std::min(a.first, b.first), std::max(a.second, b.second)};
}

void require_off_lattice(const Complex& z, const Complex& tau, const char* what) {
  if (lattice_distance(z, tau) < Real("1e-25")) throw PoleOnLattice(std::string(what) + ": argument on the lattice Z tau + Z");
}

// H_j with F^(j+1)(X) = -2 H_j(X) exp(-pi X^2), as coefficient vectors in X.
std::vector<Real> hermite_like(int j) {
  std::vector<Real> h{Real(1)};
  for (int s = 0; s < j; ++s) {
    std::vector<Real> nh(h.size() + 1, Real(0));
    for (size_t i = 1; i < h.size(); ++i) nh[i - 1] += h[i] * static_cast<long>(i);
    for (size_t i = 0; i < h.size(); ++i) nh[i + 1] -= 2 * pi() * h[i];
    h = std::move(nh);
  }
  return h;
}

Real eval_real_poly(const std::vector<Real>& c, const Real& x) {
  Real r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

}  // namespace

std::pair<long, long> gaussian_window(const Real& A, const Real& B, int digits) {
  if (!(A > 0)) throw InvalidArgument("gaussian_window needs A > 0");
  const Real c = B / (2 * A);
  const Real w = sqrt(digits_log(digits) / A);
  const Real lo = floor(c - w) - 1, hi = ceil(c + w) + 1;
  if (hi - lo > Real(4000000)) throw PrecisionUnreachable("series needs more than 4e6 terms; v too small");
  return {static_cast<long>(lo), static_cast<long>(hi)};
}

Complex theta_num(const Complex& z, const Complex& tau, int digits) {
  const Complex a = pi() * I() * tau;
  const Complex b = pi() * I() * tau + 2 * pi() * I() * (z + Real(0.5));
  const Complex g = pi() * I() * tau / 4 + pi() * I() * (z + Real(0.5));
  const auto [lo, hi] = gaussian_window(-a.real(), b.real(), digits);
  Complex s(0);
  quad_exp_terms(lo, hi, a, b, g, [&](long, const Complex& t) { s += t; });
  return s;
}

Complex theta_prime_num(const Complex& z, const Complex& tau, int digits) {
  const Complex a = pi() * I() * tau;
  const Complex b = pi() * I() * tau + 2 * pi() * I() * (z + Real(0.5));
  const Complex g = pi() * I() * tau / 4 + pi() * I() * (z + Real(0.5));
  const auto [lo, hi] = gaussian_window(-a.real(), b.real(), digits + 3);
  Complex s(0);
  quad_exp_terms(lo, hi, a, b, g, [&](long k, const Complex& t) { s += (Real(k) + Real(0.5)) * t; });
  return 2 * pi() * I() * s;
}

Complex theta_product_num(const Complex& z, const Complex& tau, int digits) {
  const Complex q = e2pi(tau), zeta = e2pi(z);
  const Real stop = boost::multiprecision::pow(Real(10), -(digits + 5));
  const Real scale = std::max({Real(1), abs(zeta), 1 / abs(zeta)});
  Complex prod(1), qr(1);  // q^(r-1)
  for (long r = 1;; ++r) {
    const Complex qn = qr * q;
    prod *= (Real(1) - qn) * (Real(1) - zeta * qr) * (Real(1) - qn / zeta);
    qr = qn;
    if (abs(qr) * scale < stop) break;
    if (r > 4000000) throw PrecisionUnreachable("theta product: q too close to the unit circle");
  }
  return -I() * cexp(pi() * I() * tau / 4) * cexp(-pi() * I() * z) * prod;
}

Complex eta_num(const Complex& tau, int digits) {
  if (!(tau.imag() > 0)) throw InvalidArgument("eta needs Im(tau) > 0");
  const Complex q = e2pi(tau);
  const Real stop = boost::multiprecision::pow(Real(10), -(digits + 5));
  Complex prod(1), qk(1);
  for (long k = 1;; ++k) {
    qk *= q;
    prod *= Real(1) - qk;
    if (abs(qk) < stop) break;
    if (k > 4000000) throw PrecisionUnreachable("eta product: q too close to the unit circle");
  }
  return cexp(pi() * I() * tau / 12) * prod;
}

Complex theta_ab_num(long a, long b, const Complex& z, const Complex& tau, int digits) {
  if (a < 1) throw InvalidArgument("theta_{a,b} needs a >= 1");
  const Real ra(a), rb(b);
  const Complex al = 2 * pi() * I() * ra * tau;
  const Complex be = 2 * pi() * I() * rb * tau + 4 * pi() * I() * ra * z;
  const Complex ga = pi() * I() * tau * rb * rb / (2 * ra) + 2 * pi() * I() * rb * z;
  const auto [lo, hi] = gaussian_window(-al.real(), be.real(), digits);
  Complex s(0);
  quad_exp_terms(lo, hi, al, be, ga, [&](long, const Complex& t) { s += t; });
  return s;
}

Real E_num(const Real& x) { return boost::math::erf(sqrt(pi()) * x); }

Real sgn_minus_E(int s, const Real& x) {
  const Real y = sqrt(pi()) * x;
  return s > 0 ? boost::math::erfc(y) : -boost::math::erfc(-y);
}

Complex R_num(const Complex& z, const Complex& tau, int digits) {
  const Real v = tau.imag();
  const Real a = z.imag() / v;
  const Complex al = -pi() * I() * tau;
  const Complex be = -pi() * I() * tau - 2 * pi() * I() * z + pi() * I();
  const Complex ga = -pi() * I() * tau / 4 - pi() * I() * z;
  const auto [lo, hi] = gaussian_window(pi() * v, -2 * pi() * v * (a + Real(0.5)), digits);
  const Real s2v = sqrt(2 * v);
  Complex s(0);
  quad_exp_terms(lo, hi, al, be, ga, [&](long k, const Complex& t) {
    const Real r = Real(k) + Real(0.5);
    s += sgn_minus_E(r > 0 ? 1 : -1, (r + a) * s2v) * t;
  });
  return s;
}

Complex mu_num(const Complex& z1, const Complex& z2, const Complex& tau, int digits) {
  require_off_lattice(z1, tau, "mu");
  require_off_lattice(z2, tau, "mu");
  const Real v = tau.imag();
  const Complex x = e2pi(z1), q = e2pi(tau);
  const Complex al = pi() * I() * tau;
  const Complex be = pi() * I() * tau + 2 * pi() * I() * z2 + pi() * I();
  const auto w = window_union(gaussian_window(pi() * v, -pi() * v - 2 * pi() * z2.imag(), digits),
                              gaussian_window(pi() * v, pi() * v - 2 * pi() * z2.imag(), digits));
  Complex qr = cexp(2 * pi() * I() * tau * Real(w.first));
  Complex s(0);
  quad_exp_terms(w.first, w.second, al, be, Complex(0), [&](long, const Complex& t) {
    s += t / (Real(1) - x * qr);
    qr *= q;
  });
  return cexp(pi() * I() * z1) / theta_num(z2, tau, digits) * s;
}

Complex mu_hat_num(const Complex& z1, const Complex& z2, const Complex& tau, int digits) {
  return mu_num(z1, z2, tau, digits) + I() / Real(2) * R_num(z1 - z2, tau, digits);
}

Complex f_M_num(const Complex& w, const Complex& z, const Complex& tau, long M, int digits) {
  if (M < 1) throw InvalidArgument("f^(M) needs M >= 1");
  require_off_lattice(z - w, tau, "f^(M)");
  const Real v = tau.imag(), rM(M);
  const Complex y = e2pi(z - w), q = e2pi(tau);
  const Complex al = 2 * pi() * I() * rM * tau;
  const Complex be = 4 * pi() * I() * rM * z;
  const auto win = window_union(gaussian_window(2 * pi() * rM * v, -4 * pi() * rM * z.imag(), digits),
                                gaussian_window(2 * pi() * rM * v, -4 * pi() * rM * z.imag() + 2 * pi() * v, digits));
  Complex qa = cexp(2 * pi() * I() * tau * Real(win.first));
  Complex s(0);
  quad_exp_terms(win.first, win.second, al, be, Complex(0), [&](long, const Complex& t) {
    s += t / (Real(1) - y * qa);
    qa *= q;
  });
  return s;
}

Complex polylog_neg(int k, const Complex& x) {
  if (k < 1) throw InvalidArgument("polylog_neg needs k >= 1");
  if (abs(x) > 1) return ((k + 1) % 2 == 0 ? Real(1) : Real(-1)) * polylog_neg(k, Real(1) / x);
  // Eulerian numbers A(k, j), j = 0..k-1.
  std::vector<Real> A{Real(1)};
  for (int s = 2; s <= k; ++s) {
    std::vector<Real> nA(static_cast<size_t>(s), Real(0));
    for (int j = 0; j < s; ++j) {
      if (j < s - 1) nA[static_cast<size_t>(j)] += Real(j + 1) * A[static_cast<size_t>(j)];
      if (j >= 1) nA[static_cast<size_t>(j)] += Real(s - j) * A[static_cast<size_t>(j - 1)];
    }
    A = std::move(nA);
  }
  Complex p(0);
  for (auto it = A.rbegin(); it != A.rend(); ++it) p = p * x + *it;
  Complex den(1);
  for (int j = 0; j <= k; ++j) den *= Real(1) - x;
  return x * p / den;
}

Complex f_M_delta(int k, const Complex& z, const Complex& tau, long M, int digits) {
  if (k < 0) throw InvalidArgument("derivative order must be >= 0");
  if (k == 0) return f_M_num(Complex(0), z, tau, M, digits);
  require_off_lattice(z, tau, "f^(M) derivative");
  const Real v = tau.imag(), rM(M);
  const Complex zeta = e2pi(z), q = e2pi(tau);
  const Complex al = 2 * pi() * I() * rM * tau;
  const Complex be = 4 * pi() * I() * rM * z;
  const auto win = window_union(gaussian_window(2 * pi() * rM * v, -4 * pi() * rM * z.imag(), digits + k),
                                gaussian_window(2 * pi() * rM * v, -4 * pi() * rM * z.imag() + 2 * pi() * v, digits + k));
  Complex qa = cexp(2 * pi() * I() * tau * Real(win.first));
  Complex s(0);
  quad_exp_terms(win.first, win.second, al, be, Complex(0), [&](long, const Complex& t) {
    s += t * polylog_neg(k, zeta * qa);
    qa *= q;
  });
  return (k % 2 == 0 ? Real(1) : Real(-1)) * s;
}

Complex R_Ml_wirtinger(long M, long ell, int k, const Complex& w, const Complex& tau, int digits) {
  if (M < 1) throw InvalidArgument("R_{M,l} needs M >= 1");
  if (k < 0) throw InvalidArgument("derivative order must be >= 0");
  const Real v = tau.imag(), rM(M), rl(ell);
  const Real a = 2 * rM * w.imag() / v;
  const Real scale = sqrt(v / rM);
  const Complex al = -2 * pi() * I() * rM * tau;
  const Complex be = -2 * pi() * I() * rl * tau - 4 * pi() * I() * rM * w;
  const Complex ga = -pi() * I() * tau * rl * rl / (2 * rM) - 2 * pi() * I() * rl * w;
  const auto [lo, hi] = gaussian_window(2 * pi() * rM * v, -2 * pi() * v * (rl + a), digits + 2 * k);
  std::vector<std::vector<Real>> H;
  for (int p = 0; p < k; ++p) H.push_back(hermite_like(p));
  const Complex dX = -I() * sqrt(rM / v);  // d/dw of X
  std::vector<Complex> dXp(static_cast<size_t>(k) + 1, Complex(1));
  for (int p = 1; p <= k; ++p) dXp[static_cast<size_t>(p)] = dXp[static_cast<size_t>(p - 1)] * dX;
  Complex s(0);
  quad_exp_terms(lo, hi, al, be, ga, [&](long j, const Complex& t) {
    const Real lam = rl + 2 * rM * Real(j);
    const Real X = (lam + a) * scale;
    const int sg = lam + Real(0.5) > 0 ? 1 : -1;
    const Complex dP = -2 * pi() * I() * lam;
    Complex acc(0);
    std::vector<Complex> dPpow(static_cast<size_t>(k) + 1, Complex(1));
    for (int p = 1; p <= k; ++p) dPpow[static_cast<size_t>(p)] = dPpow[static_cast<size_t>(p - 1)] * dP;
    const Real gauss = k > 0 ? exp(-pi() * X * X) : Real(0);
    for (int p = 0; p <= k; ++p) {
      const Real Fp = p == 0 ? sgn_minus_E(sg, X) : -2 * eval_real_poly(H[static_cast<size_t>(p - 1)], X) * gauss;
      acc += Real(binomial(k, p).get_d()) * Fp * dXp[static_cast<size_t>(p)] * dPpow[static_cast<size_t>(k - p)];
    }
    s += acc * t;
  });
  return s;
}

Complex R_Ml_num(long M, long ell, const Complex& w, const Complex& tau, int digits) {
  return R_Ml_wirtinger(M, ell, 0, w, tau, digits);
}

Complex f_hat_num(const Complex& w, const Complex& z, const Complex& tau, long M, int digits) {
  Complex corr(0);
  for (long l = 0; l < 2 * M; ++l) corr += R_Ml_num(M, l, w, tau, digits) * theta_ab_num(M, l, z, tau, digits);
  return f_M_num(w, z, tau, M, digits) - corr / Real(2);
}

Complex phi_num(long m, long n, const Complex& z, const Complex& tau, int digits) {
  require_off_lattice(z, tau, "phi");
  return boost::multiprecision::pow(theta_num(z + Real(0.5), tau, digits), static_cast<int>(m)) /
         boost::multiprecision::pow(theta_num(z, tau, digits), static_cast<int>(n));
}

Complex psi_at(const ModularMatrix& g, const Complex& tau, int digits) {
  return eta_num(g.act(tau), digits) / (csqrt(g.j_factor(tau)) * eta_num(tau, digits));
}

Complex psi_num(const ModularMatrix& g, double tol, int digits) {
  // Sample points keep Im(tau) and Im(gamma tau) comparable: c tau + d = i s sgn(c).
  std::vector<Complex> pts;
  const Real c(g.c), d(g.d);
  for (const char* s : {"1", "1.25", "0.8"}) {
    const Real sr(s);
    if (g.c == 0) pts.emplace_back(Real("0.1"), sr);
    else pts.emplace_back(-d / c, sr / abs(c));
  }
  const Complex psi = psi_at(g, pts[0], digits);
  const Real t(tol);
  for (size_t i = 1; i < pts.size(); ++i) {
    const Complex other = psi_at(g, pts[i], digits);
    if (abs(other - psi) > t) {
      throw InconsistentMultiplier("psi(" + g.to_string() + ") differs between sample points by " +
                                   format_real(abs(other - psi), 3));
    }
  }
  if (abs(abs(psi) - 1) > t) throw InconsistentMultiplier("|psi(" + g.to_string() + ")| != 1");
  if (abs(boost::multiprecision::pow(psi, 24) - Real(1)) > t) {
    throw InconsistentMultiplier("psi(" + g.to_string() + ")^24 != 1");
  }
  return psi;
}

int kronecker(long c, long d) {
  if (d % 2 == 0) throw InvalidArgument("kronecker symbol here needs odd d");
  const long ad = d < 0 ? -d : d;
  int sign = (d < 0 && c < 0) ? -1 : 1;
  if (ad == 1) return sign;
  // Jacobi symbol (c / ad).
  long a = ((c % ad) + ad) % ad, n = ad;
  int r = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) r = -r;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) r = -r;
    a %= n;
  }
  return n == 1 ? sign * r : 0;
}

Complex epsilon_d(long d) {
  const long r = ((d % 4) + 4) % 4;
  if (r == 1) return Complex(1);
  if (r == 3) return I();
  throw InvalidArgument("epsilon_d needs odd d");
}

Complex slash_num(const TauFunction& f, int two_kappa, const ModularMatrix& g, const Complex& tau) {
  Complex j = csqrt(g.j_factor(tau));
  if (two_kappa % 2 != 0) j *= Real(kronecker(g.c, g.d)) / epsilon_d(g.d);
  return boost::multiprecision::pow(j, -two_kappa) * f(g.act(tau));
}

}  // namespace maass
