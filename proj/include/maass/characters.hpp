#pragma once

// Generating function of the specialized sl(m|n)^ characters, the
// coefficient functions chF_ell and tr_ell, and the Laurent coefficients of
// phi(eps) = theta(eps + 1/2)^m / theta(eps)^n at eps = 0.

#include <optional>
#include <utility>
#include <vector>

#include "maass/qseries.hpp"

namespace maass {

struct CharacterParams {
  long m = 4;
  long n = 2;
  long ell = 0;
  long T = 40;

  /// Throws InvalidArgument unless m > n >= 1 (and, with even_only, m and n even).
  void validate(bool even_only = false) const;
};

/// prod_{k>=1} (1 + zeta q^(k-1/2))^m (1 + zeta^-1 q^(k-1/2))^m
///   / ((1 - zeta q^(k-1/2)) (1 - zeta^-1 q^(k-1/2)))^n
/// expanded in |q|^(1/2) < |zeta| < |q|^(-1/2), known modulo q^T.
ZetaQSeries chF_expansion(long m, long n, long T);
/// Coefficient of zeta^ell in chF_expansion.
QSeries chF_coefficient(long m, long n, long ell, long T);
/// chF_ell * prod_{k>=1} (1 - q^k), known modulo q^T.
QSeries tr_character(long m, long n, long ell, long T);

struct CertifiedReal {
  Real value;
  Real abs_error;  // rigorous bound on |true - value| (up to roundoff)
  long levels = 0;
  long zeta_degree = 0;
};

/// tr_character at q = e^(-2 pi t), t > 0, by numerically expanding the
/// one-sided zeta-series of the generating function. Throws
/// PrecisionUnreachable when the truncation cannot be certified to
/// relative accuracy 10^-digits.
CertifiedReal tr_character_numeric(long m, long n, long ell, const Real& t, int digits = 30);

/// Builds the generating function a second way, from the theta-quotient
/// phi(z + tau/2) times (-1)^m i^-n zeta^((m-n)/2) q^((m-n)/6) eta^(n-m+eta_offset),
/// and compares with chF_expansion modulo q^T. Throws MismatchAtOrder.
/// eta_offset != 0 is a deliberate perturbation for negative controls.
void phi_shift_consistency(long m, long n, long T, long eta_offset = 0);

/// Sum form of theta(z; tau) as a zeta/q series, known modulo q^T.
ZetaQSeries theta_sum_zeta(long T);
/// Product form -i q^(1/8) zeta^(-1/2) prod (1-q^r)(1-zeta q^(r-1))(1-zeta^-1 q^r).
ZetaQSeries theta_product_zeta(long T);

/// Taylor series in eps with QSeries coefficients, truncated after eps^max_order.
class EpsSeries {
 public:
  EpsSeries() = default;
  explicit EpsSeries(std::vector<QSeries> coeffs);

  int max_order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const QSeries& coeff(int r) const { return coeffs_.at(static_cast<size_t>(r)); }
  const std::vector<QSeries>& coeffs() const { return coeffs_; }

  EpsSeries operator*(const EpsSeries& o) const;
  EpsSeries pow(long e) const;
  /// Requires an invertible eps^0 coefficient.
  EpsSeries inverse() const;
  EpsSeries truncated_q(long T) const;

 private:
  std::vector<QSeries> coeffs_;
};

enum class ThetaKind {
  at_zero,       // theta(eps)
  at_zero_star,  // theta(eps) / eps
  at_half,       // theta(eps + 1/2)
};

/// eps-Taylor coefficients up to eps^R, each known modulo q^T.
EpsSeries theta_eps_series(ThetaKind kind, int R, long T);

/// Coefficient Dtilde_{2j} of (2 pi i eps)^(-2j) in phi(eps; tau), modulo q^T.
QSeries dtilde(long m, long n, long j, long T);
/// All Dtilde_{2j}, j = 1..n/2 (index j-1).
std::vector<QSeries> dtilde_all(long m, long n, long T);

/// E2(s tau) = 1 - 24 sum sigma_1(k) q^(s k), modulo q^T.
QSeries e2_expansion(long s, long T);

/// Eta-quotient closed forms: n = 2, j = 1 and n = 4, j = 1, 2.
QSeries dtilde_closed_form(long m, long n, long j, long T);

/// Polynomial in w = (m-n)/(8 pi v) with QSeries coefficients.
struct AlmostHolSeries {
  long m_minus_n = 0;
  std::vector<QSeries> coeffs;  // coefficient of w^j

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  Complex evaluate(const Complex& tau) const;
};

/// D_r = sum_j (-1)^j Dtilde_{2j+r} / j! w^j for even 2 <= r <= n.
AlmostHolSeries d_from_dtilde(long m, long n, long r, long T);
/// Same, from precomputed dtilde_all output.
AlmostHolSeries d_from_dtilde(long m, long n, long r, const std::vector<QSeries>& dt);

struct ThetaLogDerivatives {
  QSeries at_half;   // (2 pi i)^-2 theta''(1/2) / theta(1/2)
  QSeries at_zero;   // (2 pi i)^-2 theta*''(0) / theta*(0)
  QSeries at_half_e2;  // -E2(tau)/12 + E2(2 tau)/3
  QSeries at_zero_e2;  // E2(tau)/12
};
/// Computes both quotients and their E2 forms; throws MismatchAtOrder if
/// they disagree modulo q^T.
ThetaLogDerivatives theta_quotient_log_derivatives(long T);

}  // namespace maass
