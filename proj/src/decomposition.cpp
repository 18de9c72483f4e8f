#include "maass/decomposition.hpp"

#include "maass/exact.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace maass {

namespace {

Real tenpow(int e) { return boost::multiprecision::pow(Real(10), e); }

Real real_factorial(int k) {
  Real r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Real real_binomial(int k, int p) { return real_factorial(k) / (real_factorial(p) * real_factorial(k - p)); }

// Trapezoid means (1/P) sum g(rho e(p/P)) eps^power for each power, with P
// doubled until every mean is stable relative to the integrand size.
std::vector<Complex> circle_means(const std::function<Complex(const Complex&)>& g, const Real& rho,
                                  const std::vector<int>& powers, int digits) {
  std::vector<Complex> sums(powers.size(), Complex(0));
  Real scale = 0;
  auto add_nodes = [&](int P, int start, int stride) {
    for (int p = start; p < P; p += stride) {
      const Complex eps = rho * e2pi(Real(p) / P);
      const Complex val = g(eps);
      for (size_t i = 0; i < powers.size(); ++i) {
        const Complex term = val * boost::multiprecision::pow(eps, powers[i]);
        sums[i] += term;
        scale = std::max(scale, abs(term));
      }
    }
  };
  int P = 64;
  add_nodes(P, 0, 1);
  std::vector<Complex> prev(sums.size());
  for (size_t i = 0; i < sums.size(); ++i) prev[i] = sums[i] / Real(P);
  const Real tol = tenpow(-digits) * 10;
  for (;;) {
    const int P2 = 2 * P;
    add_nodes(P2, 1, 2);  // odd positions of the refined grid
    bool done = true;
    std::vector<Complex> cur(sums.size());
    for (size_t i = 0; i < sums.size(); ++i) {
      cur[i] = sums[i] / Real(P2);
      if (abs(cur[i] - prev[i]) > tol * std::max(scale, Real(1))) done = false;
    }
    prev = cur;
    P = P2;
    if (done) return cur;
    if (P > 8192) throw QuadratureNotConverged("Cauchy integral did not converge with 8192 nodes");
  }
}

// Central difference weights for the k-th derivative, offsets in units of h,
// second-order accurate.
std::map<int, Real> central_weights(int k) {
  std::map<int, Real> w;
  if (k == 0) {
    w[0] = 1;
    return w;
  }
  if (k % 2 == 0) {
    for (int i = 0; i <= k; ++i) w[k / 2 - i] += (i % 2 ? -1 : 1) * real_binomial(k, i);
    return w;
  }
  // Mean of two k-th differences centred at +-h/2.
  for (int i = 0; i <= k; ++i) {
    const Real c = (i % 2 ? -1 : 1) * real_binomial(k, i) / 2;
    w[(k + 1) / 2 - i] += c;
    w[(k - 1) / 2 - i] += c;
  }
  return w;
}

// Wirtinger derivative d^p g(0) = 2^-p (dx - i dy)^p g by tensor central differences.
Complex fd_wirtinger(const std::function<Complex(const Complex&)>& g, int p, const Real& h,
                     std::map<std::pair<int, int>, Complex>& cache) {
  auto at = [&](int a, int b) {
    auto it = cache.find({a, b});
    if (it != cache.end()) return it->second;
    const Complex val = g(Complex(Real(a) * h, Real(b) * h));
    cache.emplace(std::make_pair(a, b), val);
    return val;
  };
  Complex total(0);
  Complex mi(1);  // (-i)^s
  for (int s = 0; s <= p; ++s) {
    const auto wx = central_weights(p - s), wy = central_weights(s);
    Complex part(0);
    for (const auto& [a, ca] : wx)
      for (const auto& [b, cb] : wy) part += ca * cb * at(a, b);
    total += real_binomial(p, s) * mi * part;
    mi *= -I();
  }
  return total / boost::multiprecision::pow(2 * h, p);
}

void check_dop_order(const DecompositionContext& ctx, int r) {
  if (r < 1 || r % 2 == 0 || r > ctx.n - 1) {
    throw InvalidArgument("DD order must be odd with 1 <= r <= n - 1");
  }
}

Complex bridge_prefactor(const DecompositionContext& ctx, long ell, const Complex& eps) {
  const Real M(ctx.index()), l(ell), mn(ctx.period());
  return cexp(-pi() * I() * (l - M) * (l - M) * ctx.tau / mn + 2 * pi() * I() * (M - l) * eps);
}

}  // namespace

DecompositionContext DecompositionContext::make(long m, long n, const Complex& tau, int digits) {
  if (!(m > n)) throw InvalidArgument("decomposition requires m > n");
  if (n < 2 || m % 2 != 0 || n % 2 != 0) throw InvalidArgument("decomposition requires even m > n >= 2");
  if (!(tau.imag() > 0)) throw InvalidArgument("decomposition requires Im(tau) > 0");
  Precision{digits, 1e-8}.validate();
  DecompositionContext c;
  c.m = m;
  c.n = n;
  c.tau = tau;
  c.digits = digits;
  return c;
}

Real nonzero_lattice_min(const Complex& tau) {
  const Real v = tau.imag();
  Real best = 1;
  const long K = static_cast<long>(ceil(1 / v)) + 1;
  for (long a = 1; a <= K; ++a) {
    const Real x = Real(a) * tau.real();
    const long b0 = static_cast<long>(floor(-x));
    for (long b = b0 - 1; b <= b0 + 2; ++b) best = std::min(best, abs(Real(a) * tau + Real(b)));
  }
  return best;
}

Complex h_ell_contour(const DecompositionContext& ctx, long ell, const Complex& z0) {
  const Real v = ctx.v();
  const Real a = z0.imag() / v;
  const Real frac = abs(a - round(a));
  if (frac * v < tenpow(-20)) {
    const Complex shift(Real(0), v / 2);
    return (h_ell_contour(ctx, ell, z0 + shift) + h_ell_contour(ctx, ell, z0 - shift)) / Real(2);
  }
  const Real d = frac * v;  // distance to the nearest pole row
  const Real need = Real(std::log(10.0) * (ctx.digits + 5)) / (2 * pi() * d);
  if (need > Real(1 << 20)) throw PoleTooClose("integration path passes too close to a row of poles");

  const Real l(ell);
  auto g = [&](const Real& x) {
    const Complex z(z0.real() + x, z0.imag());
    return phi_num(ctx.m, ctx.n, z, ctx.tau, ctx.digits) * e2pi(-l * z);
  };
  long N = 32;
  Complex sum(0);
  Real scale = 0;
  for (long k = 0; k < N; ++k) {
    const Complex val = g(Real(k) / N);
    sum += val;
    scale = std::max(scale, abs(val));
  }
  Complex prev = sum / Real(N);
  const Real tol = tenpow(-ctx.digits) * 10;
  for (;;) {
    for (long k = 1; k < 2 * N; k += 2) {
      const Complex val = g(Real(k) / (2 * N));
      sum += val;
      scale = std::max(scale, abs(val));
    }
    N *= 2;
    const Complex cur = sum / Real(N);
    if (abs(cur - prev) <= tol * std::max(scale, Real(1))) {
      const Real mn(ctx.period());
      return cexp(-pi() * I() * ctx.tau * l * l / mn) * cur;
    }
    prev = cur;
    if (N > (1L << 21)) throw PoleTooClose("trapezoid rule did not converge near a row of poles");
  }
}

Complex h_ell(const DecompositionContext& ctx, long ell) {
  return h_ell_contour(ctx, ell, -Real(ell) * ctx.tau / Real(ctx.period()));
}

namespace {

std::vector<Complex> dtilde_all_num(long m, long n, const Complex& tau, int digits) {
  const Real rho = nonzero_lattice_min(tau) / 2;
  std::vector<int> powers;
  for (long j = 1; j <= n / 2; ++j) powers.push_back(static_cast<int>(2 * j));
  auto g = [&](const Complex& eps) { return phi_num(m, n, eps, tau, digits); };
  const auto means = circle_means(g, rho, powers, digits);
  std::vector<Complex> out;
  for (size_t i = 0; i < means.size(); ++i) out.push_back(boost::multiprecision::pow(2 * pi() * I(), powers[i]) * means[i]);
  return out;
}

Complex d_from_tilde(long m, long n, long r, const std::vector<Complex>& dt, const Real& v) {
  const Real w = Real(m - n) / (8 * pi() * v);
  Complex s(0);
  Real wi = 1;
  for (long i = 0; 2 * i + r <= n; ++i) {
    s += (i % 2 ? -1 : 1) * dt[static_cast<size_t>((2 * i + r) / 2 - 1)] * wi / real_factorial(static_cast<int>(i));
    wi *= w;
  }
  return s;
}

}  // namespace

Complex dtilde_num(long m, long n, long j, const Complex& tau, int digits) {
  if (j < 1 || 2 * j > n) throw InvalidArgument("Dtilde_{2j} needs 1 <= j <= n/2");
  return dtilde_all_num(m, n, tau, digits)[static_cast<size_t>(j - 1)];
}

Complex d_num(long m, long n, long r, const Complex& tau, int digits) {
  if (r < 2 || r % 2 != 0 || r > n) throw InvalidArgument("D_r needs even 2 <= r <= n");
  return d_from_tilde(m, n, r, dtilde_all_num(m, n, tau, digits), tau.imag());
}

Complex residue_num(const DecompositionContext& ctx, long ell) {
  const Real rho = nonzero_lattice_min(ctx.tau) / 2;
  const Real l(ell);
  auto g = [&](const Complex& eps) { return phi_num(ctx.m, ctx.n, eps, ctx.tau, ctx.digits) * e2pi(-l * eps); };
  return circle_means(g, rho, {1}, ctx.digits)[0];
}

Complex residue_from_dtilde(const DecompositionContext& ctx, long ell) {
  const auto dt = dtilde_all_num(ctx.m, ctx.n, ctx.tau, ctx.digits);
  Complex s(0);
  for (long j = 1; j <= ctx.n / 2; ++j) {
    const int k = static_cast<int>(2 * j - 1);
    s += dt[static_cast<size_t>(j - 1)] / real_factorial(k) * boost::multiprecision::pow(Real(-ell), k);
  }
  return s / (2 * pi() * I());
}

Complex dop_weight(const DecompositionContext& ctx, int j) {
  if (j % 2 != 0) return Complex(0);
  const int i = j / 2;
  const Real base = -pi() * Real(ctx.period()) / (2 * ctx.v());
  return Complex(real_factorial(j) / real_factorial(i) * boost::multiprecision::pow(base, i));
}

Complex dop_from_derivatives(const DecompositionContext& ctx, int k, const std::vector<Complex>& derivs) {
  if (static_cast<int>(derivs.size()) < k + 1) throw InvalidArgument("need derivatives of order 0..k");
  Complex s(0);
  for (int p = 0; p <= k; ++p) {
    const Complex c = dop_weight(ctx, k - p);
    if (c == Complex(0)) continue;
    s += real_binomial(k, p) * c * derivs[static_cast<size_t>(p)];
  }
  return s / boost::multiprecision::pow(2 * pi() * I(), k);
}

Complex dop_apply(const DecompositionContext& ctx, int r, long ell, const DopOptions& opt) {
  check_dop_order(ctx, r);
  const long M = ctx.index();
  std::vector<Complex> derivs;
  if (opt.mode == DopMode::wirtinger) {
    for (int p = 0; p <= r; ++p) derivs.push_back(R_Ml_wirtinger(M, ell, p, Complex(0), ctx.tau, ctx.digits));
    return dop_from_derivatives(ctx, r, derivs);
  }
  const double step = opt.step > 0 ? opt.step : std::pow(10.0, -static_cast<double>(ctx.digits) / (r + 3));
  const Real h(step);
  // Roundoff in an r-th difference grows like 10^-digits / h^r.
  if (!(step > 0) || tenpow(-ctx.digits) / boost::multiprecision::pow(h, r) > Real("1e-8")) {
    throw StepUnderflow("finite-difference step " + format_real(h, 3) + " too small for " +
                        std::to_string(ctx.digits) + " digits");
  }
  auto g = [&](const Complex& eps) { return R_Ml_num(M, ell, eps, ctx.tau, ctx.digits); };
  std::map<std::pair<int, int>, Complex> c1, c2;
  for (int p = 0; p <= r; ++p) {
    const Complex d1 = fd_wirtinger(g, p, h, c1);
    if (!opt.richardson) {
      derivs.push_back(d1);
      continue;
    }
    const Complex d2 = fd_wirtinger(g, p, h / 2, c2);
    derivs.push_back((4 * d2 - d1) / Real(3));
  }
  return dop_from_derivatives(ctx, r, derivs);
}

namespace {

Complex depsilon_sum(const DecompositionContext& ctx, long ell) {
  const long M = ctx.index();
  const Real v = ctx.v(), mn(ctx.period());
  const auto [lo, hi] = gaussian_window(2 * pi() * Real(M) * v, -2 * pi() * v * Real(ell), ctx.digits + 3);
  const Real scale = sqrt(2 * v / mn);
  Complex s(0);
  for (long k = lo; k <= hi; ++k) {
    const Real lam = Real(ell + 2 * M * k);
    const int sg = lam + Real(0.5) > 0 ? 1 : -1;
    s += lam * sgn_minus_E(sg, lam * scale) * cexp(-pi() * I() * lam * lam * ctx.tau / mn);
  }
  return s;
}

Complex depsilon_theta(const DecompositionContext& ctx, long ell) {
  const Real v = ctx.v(), mn(ctx.period());
  const Complex th = theta_ab_num(ctx.index(), ell, Complex(0), Complex(-ctx.tau.real(), ctx.tau.imag()), ctx.digits);
  return sqrt(mn) / (pi() * sqrt(2 * v)) * th;
}

}  // namespace

Complex depsilon_closed_form(const DecompositionContext& ctx, long ell) {
  return -depsilon_sum(ctx, ell) + depsilon_theta(ctx, ell);
}

Complex depsilon_closed_form_plus(const DecompositionContext& ctx, long ell) {
  return depsilon_sum(ctx, ell) + depsilon_theta(ctx, ell);
}

Complex curly_R(long M, long ell, const Complex& tau, int digits) {
  return R_Ml_wirtinger(M, ell, 1, Complex(0), tau, digits);
}

Complex raise(const Real& kappa, int k, const TauFunction& f, const Complex& tau, double step) {
  if (k < 0) throw InvalidArgument("raising order must be >= 0");
  if (k == 0) return f(tau);
  if (!(step > 0)) throw StepUnderflow("raising operator needs a positive step");
  const Real h(step);
  if (h >= tau.imag() / 2) throw InvalidArgument("step too large for Im(tau)");
  TauFunction inner = [&](const Complex& t) { return raise(kappa, k - 1, f, t, step); };
  const Complex du = (inner(tau + h) - inner(tau - h)) / (2 * h);
  const Complex dv = (inner(tau + I() * h) - inner(tau - I() * h)) / (2 * h);
  const Complex dtau = (du - I() * dv) / Real(2);
  const Real weight = kappa + 2 * (k - 1);
  return 2 * I() * dtau + weight / tau.imag() * inner(tau);
}

namespace {

Complex rewrite_raised(const DecompositionContext& ctx, int j, long ell, double step) {
  if (j < 1 || 2 * j - 1 > ctx.n - 1) throw InvalidArgument("rewrite needs 1 <= 2j - 1 <= n - 1");
  const long M = ctx.index();
  const int digits = ctx.digits;
  TauFunction R = [M, ell, digits](const Complex& t) { return curly_R(M, ell, t, digits); };
  return boost::multiprecision::pow(Real(ctx.period()), j - 1) / boost::multiprecision::pow(2 * pi(), j) *
         raise(Real(3) / 2, j - 1, R, ctx.tau, step);
}

}  // namespace

Complex rewrite_dop_rhs(const DecompositionContext& ctx, int j, long ell, double step) {
  return -I() * rewrite_raised(ctx, j, ell, step);
}

Complex rewrite_dop_rhs_literal(const DecompositionContext& ctx, int j, long ell, double step) {
  return -rewrite_raised(ctx, j, ell, step);
}

Complex mu_bridge(const DecompositionContext& ctx, long ell, const Complex& eps) {
  const Real M(ctx.index()), l(ell), mn(ctx.period());
  return bridge_prefactor(ctx, ell, eps) *
         mu_hat_num(mn * eps - Real(0.5), (M - l) * ctx.tau, mn * ctx.tau, ctx.digits);
}

Complex mu_bridge_holomorphic(const DecompositionContext& ctx, long ell, const Complex& eps) {
  const Real M(ctx.index()), l(ell), mn(ctx.period());
  return bridge_prefactor(ctx, ell, eps) * mu_num(mn * eps - Real(0.5), (M - l) * ctx.tau, mn * ctx.tau, ctx.digits);
}

Complex R_via_zwegers(const DecompositionContext& ctx, long ell, const Complex& eps) {
  const Real M(ctx.index()), l(ell), mn(ctx.period());
  return -I() * bridge_prefactor(ctx, ell, eps) *
         R_num(mn * eps - (M - l) * ctx.tau - Real(0.5), mn * ctx.tau, ctx.digits);
}

Decomposer::Decomposer(const DecompositionContext& ctx) : ctx_(ctx) {
  for (long l = 0; l < ctx.period(); ++l) h_.push_back(h_ell(ctx, l));
  dtilde_ = dtilde_all_num(ctx.m, ctx.n, ctx.tau, ctx.digits);
  for (long j = 1; j <= ctx.n / 2; ++j) d_.push_back(d_from_tilde(ctx.m, ctx.n, 2 * j, dtilde_, ctx.v()));
  for (long j = 1; j <= ctx.n / 2; ++j) {
    std::vector<Complex> row;
    for (long l = 0; l < ctx.period(); ++l) row.push_back(dop_apply(ctx, static_cast<int>(2 * j - 1), l));
    dop_R_.push_back(std::move(row));
  }
}

Complex Decomposer::phi(const Complex& z) const { return phi_num(ctx_.m, ctx_.n, z, ctx_.tau, ctx_.digits); }

Complex Decomposer::phi_F(const Complex& z) const {
  Complex s(0);
  for (long l = 0; l < ctx_.period(); ++l) {
    s += h_[static_cast<size_t>(l)] * theta_ab_num(ctx_.index(), l, z, ctx_.tau, ctx_.digits);
  }
  return s;
}

Complex Decomposer::phi_P(const Complex& z) const {
  Complex s(0);
  for (long j = 1; j <= ctx_.n / 2; ++j) {
    const int k = static_cast<int>(2 * j - 1);
    s += dtilde_[static_cast<size_t>(j - 1)] / real_factorial(k) * f_M_delta(k, z, ctx_.tau, ctx_.index(), ctx_.digits);
  }
  return -s;
}

Complex Decomposer::phi_P_cauchy(const Complex& z) const {
  const Real rho = lattice_distance(z, ctx_.tau) / 2;
  if (rho < tenpow(-10)) throw PoleTooClose("z too close to a pole for a Cauchy integral in eps");
  std::vector<int> powers;
  for (long j = 1; j <= ctx_.n / 2; ++j) powers.push_back(-static_cast<int>(2 * j - 1));
  auto g = [&](const Complex& eps) { return f_M_num(eps, z, ctx_.tau, ctx_.index(), ctx_.digits); };
  const auto means = circle_means(g, rho, powers, ctx_.digits);
  Complex s(0);
  for (long j = 1; j <= ctx_.n / 2; ++j) {
    const int k = static_cast<int>(2 * j - 1);
    // delta^k f(0) = (2 pi i)^-k k! [eps^k] f
    const Complex delta = means[static_cast<size_t>(j - 1)] / boost::multiprecision::pow(2 * pi() * I(), k) * real_factorial(k);
    s += dtilde_[static_cast<size_t>(j - 1)] / real_factorial(k) * delta;
  }
  return -s;
}

namespace {

std::vector<Complex> f_wirtinger_derivs(const DecompositionContext& ctx, const Complex& z, int k) {
  std::vector<Complex> d;
  Complex tpi(1);
  for (int p = 0; p <= k; ++p) {
    d.push_back(tpi * f_M_delta(p, z, ctx.tau, ctx.index(), ctx.digits));
    tpi *= 2 * pi() * I();
  }
  return d;
}

}  // namespace

Complex Decomposer::phi_P_dop(const Complex& z) const {
  const auto derivs = f_wirtinger_derivs(ctx_, z, static_cast<int>(ctx_.n - 1));
  Complex s(0);
  for (long j = 1; j <= ctx_.n / 2; ++j) {
    const int k = static_cast<int>(2 * j - 1);
    s += d_[static_cast<size_t>(j - 1)] / real_factorial(k) * dop_from_derivatives(ctx_, k, derivs);
  }
  return -s;
}

Complex Decomposer::h_hat(long ell) const {
  const long mn = ctx_.period();
  const long l = ((ell % mn) + mn) % mn;
  Complex corr(0);
  for (long j = 1; j <= ctx_.n / 2; ++j) {
    corr += d_[static_cast<size_t>(j - 1)] / real_factorial(static_cast<int>(2 * j - 1)) *
            dop_R_[static_cast<size_t>(j - 1)][static_cast<size_t>(l)];
  }
  return h_[static_cast<size_t>(l)] - corr / Real(2);
}

Complex Decomposer::phi_F_hat(const Complex& z) const {
  Complex s(0);
  for (long l = 0; l < ctx_.period(); ++l) s += h_hat(l) * theta_ab_num(ctx_.index(), l, z, ctx_.tau, ctx_.digits);
  return s;
}

Complex Decomposer::phi_P_hat(const Complex& z) const {
  const auto derivs = f_wirtinger_derivs(ctx_, z, static_cast<int>(ctx_.n - 1));
  std::vector<Complex> th;
  for (long l = 0; l < ctx_.period(); ++l) th.push_back(theta_ab_num(ctx_.index(), l, z, ctx_.tau, ctx_.digits));
  Complex s(0);
  for (long j = 1; j <= ctx_.n / 2; ++j) {
    const int k = static_cast<int>(2 * j - 1);
    Complex dop_fhat = dop_from_derivatives(ctx_, k, derivs);
    for (long l = 0; l < ctx_.period(); ++l) {
      dop_fhat -= dop_R_[static_cast<size_t>(j - 1)][static_cast<size_t>(l)] * th[static_cast<size_t>(l)] / Real(2);
    }
    s += d_[static_cast<size_t>(j - 1)] / real_factorial(k) * dop_fhat;
  }
  return -s;
}

}  // namespace maass
