#pragma once

// Finite/polar decomposition of phi(z; tau) = theta(z + 1/2)^m / theta(z)^n
// for even m > n >= 2, the completed coefficient functions and the operator
// DD = delta_eps - (m - n) Im(eps) / v on eps = 0.

#include <vector>

#include "maass/special.hpp"

namespace maass {

struct DecompositionContext {
  long m = 4;
  long n = 2;
  Complex tau = Complex(Real(0), Real(1));
  int digits = 30;

  /// Throws InvalidArgument unless m > n >= 2 are even and Im(tau) > 0.
  static DecompositionContext make(long m, long n, const Complex& tau, int digits = 30);

  long index() const { return (m - n) / 2; }  // M
  long period() const { return m - n; }
  Real v() const { return tau.imag(); }
};

/// Distance from 0 to the nearest nonzero point of Z tau + Z.
Real nonzero_lattice_min(const Complex& tau);

/// q^(-l^2 / (2(m-n))) times the integral of phi(z) e(-l z) over
/// [z0, z0 + 1]. Paths through a pole row are replaced by the mean of the
/// two parallel paths half a row above and below. Trapezoid rule, which is
/// spectral for this periodic integrand; the node count doubles until two
/// passes agree. Throws PoleTooClose when the path grazes a pole row.
Complex h_ell_contour(const DecompositionContext& ctx, long ell, const Complex& z0);
/// h_l = h_l^(z0) with z0 = -l tau / (m - n).
Complex h_ell(const DecompositionContext& ctx, long ell);

/// Dtilde_{2j}(tau): coefficient of (2 pi i eps)^(-2j) in phi(eps; tau), from a
/// Cauchy integral on |eps| = rho with rho half the distance to the nearest
/// other pole.
Complex dtilde_num(long m, long n, long j, const Complex& tau, int digits = 30);
/// D_r(tau) = sum_i (-1)^i Dtilde_{2i+r} / i! ((m-n) / (8 pi v))^i, r even.
Complex d_num(long m, long n, long r, const Complex& tau, int digits = 30);

/// Res_{eps=0} phi(eps) e(-l eps) by a Cauchy integral.
Complex residue_num(const DecompositionContext& ctx, long ell);
/// The same residue from the Laurent coefficients Dtilde_{2j}.
Complex residue_from_dtilde(const DecompositionContext& ctx, long ell);

/// c_j = j! [eps^j] exp(-pi (m-n) eps^2 / (2v)).
Complex dop_weight(const DecompositionContext& ctx, int j);
/// DD^k at eps = 0 from Wirtinger derivatives d^p g(0), p = 0..k:
/// (2 pi i)^-k sum_p C(k,p) c_(k-p) d^p g(0).
Complex dop_from_derivatives(const DecompositionContext& ctx, int k, const std::vector<Complex>& derivs);

enum class DopMode { wirtinger, finite_difference };

struct DopOptions {
  DopMode mode = DopMode::wirtinger;
  /// Finite-difference step; 0 picks 10^(-digits / (r + 3)).
  double step = 0;
  bool richardson = true;
};

/// DD^r [R_{M,l}(eps; tau)] at eps = 0, M = (m - n)/2, r odd with 1 <= r <= n - 1.
/// Throws StepUnderflow when the requested step drowns in roundoff.
Complex dop_apply(const DecompositionContext& ctx, int r, long ell, const DopOptions& opt = {});

/// Closed form of DD[R_{M,l}] at 0:
/// -sum_{lambda = l mod (m-n)} lambda (sgn(lambda + 1/2) - E(lambda sqrt(2v/(m-n)))) e^(-pi i lambda^2 tau/(m-n))
///   + sqrt(m-n) / (pi sqrt(2v)) theta_{M,l}(0; -conj(tau)).
Complex depsilon_closed_form(const DecompositionContext& ctx, long ell);
/// Same with a plus sign in front of the lambda sum.
Complex depsilon_closed_form_plus(const DecompositionContext& ctx, long ell);

/// Wirtinger d/deps R_{M,l}(eps; tau) at eps = 0.
Complex curly_R(long M, long ell, const Complex& tau, int digits = 30);

/// Maass raising operator R_kappa = 2i d/dtau + kappa / v iterated k times
/// (weights kappa, kappa + 2, ...), via nested central differences in u and v.
Complex raise(const Real& kappa, int k, const TauFunction& f, const Complex& tau, double step);

/// -i (m-n)^(j-1) / (2 pi)^j R_{3/2}^(j-1)(curly R)(tau), j = 1 or 2; tau
/// derivatives by central differences with the given step.
Complex rewrite_dop_rhs(const DecompositionContext& ctx, int j, long ell, double step);
/// Variant without the factor i: -(m-n)^(j-1) / (2 pi)^j R_{3/2}^(j-1)(curly R).
Complex rewrite_dop_rhs_literal(const DecompositionContext& ctx, int j, long ell, double step);

/// f(eps; tau) = e^(-pi i (l - M)^2 tau / (m-n) + 2 pi i (M - l) eps)
///   mu_hat((m-n) eps - 1/2, (M - l) tau; (m-n) tau).
Complex mu_bridge(const DecompositionContext& ctx, long ell, const Complex& eps);
/// Its holomorphic part (mu in place of mu_hat).
Complex mu_bridge_holomorphic(const DecompositionContext& ctx, long ell, const Complex& eps);
/// -i times the prefactor times R((m-n) eps - (M - l) tau - 1/2; (m-n) tau).
Complex R_via_zwegers(const DecompositionContext& ctx, long ell, const Complex& eps);

/// Holds the coefficient functions at one tau and evaluates every piece of
/// the decomposition.
class Decomposer {
 public:
  explicit Decomposer(const DecompositionContext& ctx);

  const DecompositionContext& context() const { return ctx_; }
  /// Canonical h_l, l = 0..m-n-1.
  const std::vector<Complex>& h() const { return h_; }
  /// Dtilde_{2j}, j = 1..n/2 (index j-1).
  const std::vector<Complex>& dtilde() const { return dtilde_; }
  /// D_{2j}, j = 1..n/2 (index j-1).
  const std::vector<Complex>& d() const { return d_; }

  Complex phi(const Complex& z) const;
  Complex phi_F(const Complex& z) const;
  /// Polar part from Dtilde and closed-form delta-derivatives of f_eps.
  Complex phi_P(const Complex& z) const;
  /// Polar part with the eps-derivatives taken by a Cauchy integral.
  Complex phi_P_cauchy(const Complex& z) const;
  /// Polar part written with D_{2j} and DD acting on f_eps.
  Complex phi_P_dop(const Complex& z) const;

  /// Completed coefficient h_hat_l.
  Complex h_hat(long ell) const;
  Complex phi_F_hat(const Complex& z) const;
  /// -sum_j D_{2j}/(2j-1)! DD^(2j-1)[f_hat_eps(z)] at eps = 0.
  Complex phi_P_hat(const Complex& z) const;

 private:
  DecompositionContext ctx_;
  std::vector<Complex> h_;
  std::vector<Complex> dtilde_;
  std::vector<Complex> d_;
  std::vector<std::vector<Complex>> dop_R_;  // [j-1][l]: DD^(2j-1) R_{M,l}
};

}  // namespace maass
