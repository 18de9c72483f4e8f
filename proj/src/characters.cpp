#include "maass/characters.hpp"

#include <cmath>

namespace maass {

namespace {

ExactScalar int_scalar(const mpz_class& z) { return ExactScalar(GaussRational(mpq_class(z))); }

ExactScalar rat(long num, long den = 1) { return ExactScalar(GaussRational(make_q(num, den))); }

}  // namespace

void CharacterParams::validate(bool even_only) const {
  if (n < 1) throw InvalidArgument("requires n >= 1");
  if (m <= n) throw InvalidArgument("requires m > n");
  if (T < 1) throw InvalidArgument("requires order T >= 1");
  if (even_only && (m % 2 != 0 || n % 2 != 0)) {
    throw InvalidArgument("requires m and n even");
  }
}

// ---------------------------------------------------------------- ch F

ZetaQSeries chF_expansion(long m, long n, long T) {
  CharacterParams{m, n, 0, T}.validate();
  // Dense table over q^(k/2), k < 2T, and zeta^z, |z| <= 2T.
  const long K = 2 * T;
  const long Z = 2 * T;
  const long W = 2 * Z + 1;
  std::vector<mpz_class> c(static_cast<size_t>(K * W), 0);
  auto at = [&](long qk, long z) -> mpz_class& {
    return c[static_cast<size_t>(qk * W + (z + Z))];
  };
  at(0, 0) = 1;
  for (long a = 1; a < K; a += 2) {  // q^(a/2) = q^(k - 1/2)
    for (int dir : {1, -1}) {
      for (long rep = 0; rep < m; ++rep) {  // times (1 + zeta^dir q^(a/2))
        for (long qk = K - 1; qk >= a; --qk) {
          for (long z = -Z; z <= Z; ++z) {
            const long zs = z - dir;
            if (zs < -Z || zs > Z) continue;
            const mpz_class& src = at(qk - a, zs);
            if (sgn(src) != 0) at(qk, z) += src;
          }
        }
      }
      for (long rep = 0; rep < n; ++rep) {  // divided by (1 - zeta^dir q^(a/2))
        for (long qk = a; qk < K; ++qk) {
          for (long z = -Z; z <= Z; ++z) {
            const long zs = z - dir;
            if (zs < -Z || zs > Z) continue;
            const mpz_class& src = at(qk - a, zs);
            if (sgn(src) != 0) at(qk, z) += src;
          }
        }
      }
    }
  }
  ZetaQSeries out(2, K);
  for (long qk = 0; qk < K; ++qk) {
    ZetaPoly p;
    for (long z = -Z; z <= Z; ++z) {
      if (sgn(at(qk, z)) != 0) p.add_term(z, int_scalar(at(qk, z)));
    }
    out.set(qk, p);
  }
  return out.normalized();
}

QSeries chF_coefficient(long m, long n, long ell, long T) {
  return coeff_extract(chF_expansion(m, n, T), ell);
}

QSeries tr_character(long m, long n, long ell, long T) {
  return chF_coefficient(m, n, ell, T) * euler_product(T);
}

// ---------------------------------------------------------------- numeric character

CertifiedReal tr_character_numeric(long m, long n, long ell, const Real& t, int digits) {
  CharacterParams{m, n, ell, 1}.validate();
  if (!(t > 0)) throw InvalidArgument("requires t > 0");
  Precision{digits, 1e-8}.validate();
  const Real q = exp(-2 * pi() * t);
  const Real tol = pow(Real(10), -digits);
  const Real sq = sqrt(q);
  ell = std::labs(ell);  // zeta <-> zeta^-1 symmetry

  // Level truncation: sum_{k>K} (2m c_k + 2n c_k / (1 - c_k)) <= tol / 8.
  long K = 1;
  Real level_excess;
  while (true) {
    const Real cnext = sq * pow(q, K);  // c_{K+1} = q^(K + 1/2)
    const Real s = (2 * m + 2 * n / (1 - cnext)) * cnext / (1 - q);
    if (s < tol / 8 || K > 100000) {
      level_excess = expm1(s);
      break;
    }
    ++K;
  }
  if (K > 100000) throw PrecisionUnreachable("level truncation exceeds 1e5");
  std::vector<Real> ck(static_cast<size_t>(K));
  for (long k = 1; k <= K; ++k) ck[static_cast<size_t>(k - 1)] = sq * pow(q, k - 1);

  auto one_sided = [&](long B) {
    // Coefficients alpha_0..alpha_B of prod (1 + zeta c_k)^m / (1 - zeta c_k)^n.
    std::vector<Real> alpha(static_cast<size_t>(B + 1), Real(0));
    alpha[0] = 1;
    for (long k = 0; k < K; ++k) {
      const Real& c = ck[static_cast<size_t>(k)];
      for (long rep = 0; rep < m; ++rep) {
        for (long b = B; b >= 1; --b) alpha[static_cast<size_t>(b)] += c * alpha[static_cast<size_t>(b - 1)];
      }
      for (long rep = 0; rep < n; ++rep) {
        for (long b = 1; b <= B; ++b) alpha[static_cast<size_t>(b)] += c * alpha[static_cast<size_t>(b - 1)];
      }
    }
    return alpha;
  };

  // Cauchy bound alpha_a <= A(r) r^-a for 1 < r < q^(-1/2): choose r to
  // minimise the zeta-degree needed.
  auto log_A = [&](const Real& r) {
    Real s = 0;
    for (const Real& c : ck) s += m * log1p(r * c) - n * log1p(-r * c);
    return s;
  };
  Real best_r = 0, best_logA = 0;
  long best_B = -1;
  for (int i = 1; i < 20; ++i) {
    const Real theta = Real(i) / 20;
    const Real r = pow(q, -theta / 2);
    const Real la = log_A(r);
    // Need 2 la - ell log r - 2 (B+1) log r - log(1 - r^-2) <= log(tol/8) + log(chF_ell),
    // with chF_ell >= 1 used as a first guess.
    const Real lr = log(r);
    const Real need = (2 * la - ell * lr - log1p(-1 / (r * r)) - log(tol / 8)) / (2 * lr) - 1;
    const long B = static_cast<long>(ceil(need)) + ell + 1;
    if (best_B < 0 || B < best_B) {
      best_B = B;
      best_r = r;
      best_logA = la;
    }
  }
  if (best_B > 200000) throw PrecisionUnreachable("zeta-degree bound exceeds 2e5");

  const std::vector<Real> alpha = one_sided(best_B);
  auto chf = [&](long l) {
    Real s = 0;
    for (long b = 0; b + l <= best_B; ++b) s += alpha[static_cast<size_t>(b + l)] * alpha[static_cast<size_t>(b)];
    return s;
  };
  const Real chf_ell = chf(ell);
  const Real chf_0 = ell == 0 ? chf_ell : chf(0);
  // Tail of sum_b alpha_{b+ell} alpha_b for b > best_B - ell.
  const Real lr = log(best_r);
  const long b0 = best_B - ell + 1;
  const Real tail =
      exp(2 * best_logA - ell * lr - 2 * b0 * lr) / (1 - 1 / (best_r * best_r));

  // prod_{k>=1} (1 - q^k) with tail factor in [1 - q^(P+1)/(1-q), 1].
  Real prod = 1;
  long P = 0;
  while (true) {
    ++P;
    prod *= 1 - pow(q, P);
    if (pow(q, P + 1) / (1 - q) < tol / 8) break;
  }
  const Real prod_excess = pow(q, P + 1) / (1 - q);

  CertifiedReal out;
  out.value = chf_ell * prod;
  const Real rounding = out.value * Real(K * (m + n) + best_B) * std::numeric_limits<Real>::epsilon();
  out.abs_error = (chf_0 * level_excess + tail) * prod + out.value * prod_excess + rounding;
  out.levels = K;
  out.zeta_degree = best_B;
  if (out.abs_error > tol * out.value * 4) {
    throw PrecisionUnreachable("character value at t=" + format_real(t, 6) +
                               " not certified to 1e-" + std::to_string(digits));
  }
  return out;
}

// ---------------------------------------------------------------- theta as zeta series

ZetaQSeries theta_sum_zeta(long T) {
  // nu = s + 1/2: i (-1)^s q^(nu^2/2) zeta^nu.
  ZetaQSeries r(8, 8 * T);
  for (long s = -T - 2; s <= T + 2; ++s) {
    const long a = 2 * s + 1;
    if (a * a >= 8 * T) continue;
    const GaussRational c = GaussRational(0, (s % 2 == 0) ? 1 : -1);
    r.add(a * a, ZetaPoly::monomial(ExactScalar(c), a, 2));
  }
  return r;
}

ZetaQSeries theta_product_zeta(long T) {
  ZetaQSeries p = ZetaQSeries::constant(ZetaPoly(1), 1, T);
  for (long r = 1; r <= T; ++r) {
    if (r < T) {
      ZetaQSeries f = ZetaQSeries::constant(ZetaPoly(1), 1, T);
      f.add(r, ZetaPoly(-1));
      p *= f;
    }
    {
      ZetaQSeries f = ZetaQSeries::constant(ZetaPoly(1), 1, T);
      f.add(r - 1, ZetaPoly::monomial(ExactScalar(-1), 1));
      p *= f;
    }
    if (r < T) {
      ZetaQSeries f = ZetaQSeries::constant(ZetaPoly(1), 1, T);
      f.add(r, ZetaPoly::monomial(ExactScalar(-1), -1));
      p *= f;
    }
  }
  p = zeta_shifted(p, -1, 2).shifted(1, 8);
  return p.scaled(ExactScalar(GaussRational(0, -1)));
}

// ---------------------------------------------------------------- chF <-> phi

void phi_shift_consistency(long m, long n, long T, long eta_offset) {
  CharacterParams{m, n, 0, T}.validate(true);
  const long Tw = T + 2;
  // theta(z + tau/2 + 1/2) = sum_nu -q^(nu(nu+1)/2) zeta^nu,
  // theta(z + tau/2)       = sum_nu i(-1)^s q^(nu(nu+1)/2) zeta^nu, nu = s + 1/2.
  ZetaQSeries A(8, 8 * Tw), B(8, 8 * Tw);
  for (long s = -2 * Tw - 4; s <= 2 * Tw + 4; ++s) {
    const long e = 4 * s * s + 8 * s + 3;  // 8 nu (nu+1)/2
    if (e >= 8 * Tw) continue;
    const long a = 2 * s + 1;
    A.add(e, ZetaPoly::monomial(ExactScalar(-1), a, 2));
    B.add(e, ZetaPoly::monomial(ExactScalar(GaussRational(0, (s % 2 == 0) ? 1 : -1)), a, 2));
  }
  ZetaQSeries rhs = A.pow(m) * B.pow(-n);
  const GaussRational prefactor = GaussRational(m % 2 == 0 ? 1 : -1) * i_pow(-n);
  rhs = zeta_shifted(rhs, m - n, 2).scaled(ExactScalar(prefactor)).shifted(m - n, 6);
  rhs *= lift(eta_quotient({{1, n - m + eta_offset}}, Tw));
  rhs = rhs.truncated(T);
  const ZetaQSeries lhs = chF_expansion(m, n, T);
  ZetaQSeries::require_equal(lhs, rhs, "chF versus shifted theta quotient");
}

// ---------------------------------------------------------------- eps series

EpsSeries::EpsSeries(std::vector<QSeries> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("empty eps series");
}

EpsSeries EpsSeries::operator*(const EpsSeries& o) const {
  const int R = std::min(max_order(), o.max_order());
  std::vector<QSeries> c;
  for (int r = 0; r <= R; ++r) {
    QSeries s = coeff(0) * o.coeff(r);
    for (int i = 1; i <= r; ++i) s += coeff(i) * o.coeff(r - i);
    c.push_back(std::move(s));
  }
  return EpsSeries(std::move(c));
}

EpsSeries EpsSeries::inverse() const {
  const QSeries inv0 = coeff(0).inverse();
  std::vector<QSeries> b{inv0};
  for (int r = 1; r <= max_order(); ++r) {
    QSeries s = coeff(1) * b[static_cast<size_t>(r - 1)];
    for (int i = 2; i <= r; ++i) s += coeff(i) * b[static_cast<size_t>(r - i)];
    b.push_back(-(s * inv0));
  }
  return EpsSeries(std::move(b));
}

EpsSeries EpsSeries::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) throw InvalidArgument("eps series zeroth power not needed");
  EpsSeries result = *this;
  EpsSeries base = *this;
  --e;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

EpsSeries EpsSeries::truncated_q(long T) const {
  std::vector<QSeries> c;
  for (const auto& s : coeffs_) c.push_back(s.truncated(T));
  return EpsSeries(std::move(c));
}

EpsSeries theta_eps_series(ThetaKind kind, int R, long T) {
  if (R < 0) throw InvalidArgument("eps order must be >= 0");
  const int shift = kind == ThetaKind::at_zero_star ? 1 : 0;
  std::vector<QSeries> coeffs;
  for (int r = 0; r <= R; ++r) {
    const int d = r + shift;  // derivative order
    const mpz_class fact = factorial(d);
    QSeries s(8, 8 * T);
    for (long sidx = -T - 2; sidx <= T + 2; ++sidx) {
      const long a = 2 * sidx + 1;
      if (a * a >= 8 * T) continue;
      mpz_class ad;
      mpz_pow_ui(ad.get_mpz_t(), mpz_class(a).get_mpz_t(), static_cast<unsigned long>(d));
      GaussRational c(mpq_class(ad, fact));
      if (kind == ThetaKind::at_half) {
        // -(2 pi i)^d nu^d / d!  = -i^d (2s+1)^d / d! pi^d
        c = -(c * i_pow(d));
      } else {
        // i e^(pi i nu)... = i^(d+1) (-1)^s (2s+1)^d / d! pi^d
        c = c * i_pow(d + 1);
        if (sidx % 2 != 0) c = -c;
      }
      s.add(a * a, ExactScalar(c, d));
    }
    coeffs.push_back(s.normalized());
  }
  return EpsSeries(std::move(coeffs));
}

std::vector<QSeries> dtilde_all(long m, long n, long T) {
  CharacterParams{m, n, 0, T}.validate(true);
  const int R = static_cast<int>(n) + 2;  // eps order: n - 2 is needed, n + 2 is kept
  if (R < n + 2) throw InvalidArgument("eps order must be at least n + 2");
  const long Tw = T + 1;
  const EpsSeries num = theta_eps_series(ThetaKind::at_half, R, Tw).pow(m);
  const EpsSeries den = theta_eps_series(ThetaKind::at_zero_star, R, Tw).pow(-n);
  const EpsSeries P = num * den;
  std::vector<QSeries> out;
  for (long j = 1; j <= n / 2; ++j) {
    // (2 pi i)^(2j) = (-4)^j pi^(2j)
    const ExactScalar scale(GaussRational((j % 2 == 0 ? 1 : -1) * (1L << (2 * j))),
                            static_cast<int>(2 * j));
    out.push_back(P.coeff(static_cast<int>(n - 2 * j)).scaled(scale).truncated(T));
  }
  return out;
}

QSeries dtilde(long m, long n, long j, long T) {
  if (j < 1 || 2 * j > n) throw InvalidArgument("requires 1 <= j <= n/2");
  return dtilde_all(m, n, T).at(static_cast<size_t>(j - 1));
}

QSeries e2_expansion(long s, long T) {
  if (s < 1) throw InvalidArgument("E2 scale must be >= 1");
  QSeries e = QSeries::constant(ExactScalar(1), 1, T);
  for (long k = 1; s * k < T; ++k) {
    long sigma = 0;
    for (long d = 1; d <= k; ++d) {
      if (k % d == 0) sigma += d;
    }
    e.add(s * k, ExactScalar(-24 * sigma));
  }
  return e;
}

QSeries dtilde_closed_form(long m, long n, long j, long T) {
  mpz_class two_m;
  mpz_ui_pow_ui(two_m.get_mpz_t(), 2, static_cast<unsigned long>(m));
  const ExactScalar p2m = int_scalar(two_m);
  if (n == 2 && j == 1) {
    return eta_quotient({{2, 2 * m}, {1, -(m + 6)}}, T).scaled(-p2m).truncated(T);
  }
  if (n == 4 && (j == 1 || j == 2)) {
    const QSeries base = eta_quotient({{2, 2 * m}, {1, -(m + 12)}}, T).scaled(p2m);
    if (j == 2) return base.truncated(T);
    const QSeries e2 = e2_expansion(1, T).scaled(rat(-m - 4, 24)) +
                       e2_expansion(2, T).scaled(rat(m, 6));
    return (base * e2).truncated(T);
  }
  throw InvalidArgument("closed form known only for n = 2 (j = 1) and n = 4 (j = 1, 2)");
}

Complex AlmostHolSeries::evaluate(const Complex& tau) const {
  const Real w = Real(m_minus_n) / (8 * pi() * tau.imag());
  Complex sum(0);
  Real wp = 1;
  for (const auto& c : coeffs) {
    sum += maass::evaluate(c, tau) * wp;
    wp *= w;
  }
  return sum;
}

AlmostHolSeries d_from_dtilde(long m, long n, long r, const std::vector<QSeries>& dt) {
  if (r % 2 != 0 || r < 2 || r > n) throw InvalidArgument("requires even 2 <= r <= n");
  AlmostHolSeries out;
  out.m_minus_n = m - n;
  for (long j = 0; 2 * j + r <= n; ++j) {
    const QSeries& d = dt.at(static_cast<size_t>((2 * j + r) / 2 - 1));
    mpz_class jf = factorial(j);
    out.coeffs.push_back(
        d.scaled(ExactScalar(GaussRational(mpq_class(j % 2 == 0 ? 1 : -1, 1) / mpq_class(jf)))));
  }
  return out;
}

AlmostHolSeries d_from_dtilde(long m, long n, long r, long T) {
  return d_from_dtilde(m, n, r, dtilde_all(m, n, T));
}

ThetaLogDerivatives theta_quotient_log_derivatives(long T) {
  const EpsSeries half = theta_eps_series(ThetaKind::at_half, 2, T + 1);
  const EpsSeries star = theta_eps_series(ThetaKind::at_zero_star, 2, T + 1);
  // (2 pi i)^-2 * 2 c2 / c0 = -1/(2 pi^2) c2 / c0.
  const ExactScalar k(GaussRational(make_q(-1, 2)), -2);
  ThetaLogDerivatives out;
  out.at_half = (half.coeff(2) * half.coeff(0).inverse()).scaled(k).truncated(T);
  out.at_zero = (star.coeff(2) * star.coeff(0).inverse()).scaled(k).truncated(T);
  out.at_half_e2 = e2_expansion(1, T).scaled(rat(-1, 12)) + e2_expansion(2, T).scaled(rat(1, 3));
  out.at_zero_e2 = e2_expansion(1, T).scaled(rat(1, 12));
  QSeries::require_equal(out.at_half, out.at_half_e2, "theta''(1/2)/theta(1/2)");
  QSeries::require_equal(out.at_zero, out.at_zero_e2, "theta*''(0)/theta*(0)");
  return out;
}

}  // namespace maass
