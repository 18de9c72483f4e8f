#pragma once

// Numerical evaluators: Jacobi theta functions, eta, the Appell-Lerch sums
// mu and f^(M), their nonholomorphic corrections R and R_{M,l}, the eta
// multiplier and the slash action.

#include <functional>
#include <utility>

#include "maass/numeric.hpp"

namespace maass {

/// Integer window [lo, hi] outside which terms exp(-A k^2 + B k) of a
/// Gaussian-type sum are below 10^-(digits+5) of the largest term. A > 0.
std::pair<long, long> gaussian_window(const Real& A, const Real& B, int digits);

/// theta(z; tau) = sum_{nu in 1/2 + Z} exp(pi i nu^2 tau + 2 pi i nu (z + 1/2)).
Complex theta_num(const Complex& z, const Complex& tau, int digits = 30);
/// d/dz theta(z; tau).
Complex theta_prime_num(const Complex& z, const Complex& tau, int digits = 30);
/// Product form -i q^(1/8) zeta^(-1/2) prod (1-q^r)(1-zeta q^(r-1))(1-zeta^-1 q^r),
/// with zeta^(-1/2) = exp(-pi i z).
Complex theta_product_num(const Complex& z, const Complex& tau, int digits = 30);
Complex eta_num(const Complex& tau, int digits = 30);
/// theta_{a,b}(z; tau) = sum_{lambda = b mod 2a} exp(pi i lambda^2 tau / (2a) + 2 pi i lambda z).
Complex theta_ab_num(long a, long b, const Complex& z, const Complex& tau, int digits = 30);

/// E(x) = 2 int_0^x exp(-pi t^2) dt for real x.
Real E_num(const Real& x);
/// s - E(x) for s = +-1, without cancellation for large |x|.
Real sgn_minus_E(int s, const Real& x);

/// R(z; tau) = sum_{r in 1/2+Z} (sgn r - E((r + Im z / v) sqrt(2v))) (-1)^(r-1/2) q^(-r^2/2) e^(-2 pi i r z).
Complex R_num(const Complex& z, const Complex& tau, int digits = 30);
/// Appell-Lerch sum mu(z1, z2; tau). Throws PoleOnLattice.
Complex mu_num(const Complex& z1, const Complex& z2, const Complex& tau, int digits = 30);
/// mu + (i/2) R(z1 - z2).
Complex mu_hat_num(const Complex& z1, const Complex& z2, const Complex& tau, int digits = 30);

/// f_w^(M)(z; tau) = sum_alpha e^(4 pi i M alpha z) q^(M alpha^2) / (1 - e^(2 pi i (z-w)) q^alpha).
Complex f_M_num(const Complex& w, const Complex& z, const Complex& tau, long M, int digits = 30);
/// delta_eps^k [f_eps^(M)(z; tau)] at eps = 0, delta = (2 pi i)^-1 d/deps, in closed form
/// through polylogarithms of negative order.
Complex f_M_delta(int k, const Complex& z, const Complex& tau, long M, int digits = 30);
/// Li_{-k}(x) = sum_{j>=1} j^k x^j continued to x != 1, k >= 1.
Complex polylog_neg(int k, const Complex& x);

/// R_{M,l}(w; tau).
Complex R_Ml_num(long M, long ell, const Complex& w, const Complex& tau, int digits = 30);
/// Wirtinger derivative (d/dw)^k R_{M,l}(w; tau), w and conj(w) independent.
Complex R_Ml_wirtinger(long M, long ell, int k, const Complex& w, const Complex& tau, int digits = 30);
/// f_w - (1/2) sum_{l mod 2M} R_{M,l}(w) theta_{M,l}(z).
Complex f_hat_num(const Complex& w, const Complex& z, const Complex& tau, long M, int digits = 30);

/// phi(z; tau) = theta(z + 1/2)^m / theta(z)^n.
Complex phi_num(long m, long n, const Complex& z, const Complex& tau, int digits = 30);

/// psi(gamma) = eta(gamma tau) / (sqrt(c tau + d) eta(tau)), principal square root,
/// sampled at three points. Throws InconsistentMultiplier when the samples
/// disagree, |psi| != 1 or psi^24 != 1 beyond tol.
Complex psi_num(const ModularMatrix& g, double tol = 1e-10, int digits = 30);
/// Same at a single point, no checks.
Complex psi_at(const ModularMatrix& g, const Complex& tau, int digits = 30);

/// Kronecker symbol (c/d) for odd d, with (c/d) = -(c/|d|) when c < 0 and d < 0.
int kronecker(long c, long d);
/// 1 for d = 1 mod 4, i for d = 3 mod 4.
Complex epsilon_d(long d);

using TauFunction = std::function<Complex(const Complex&)>;
/// j(gamma, tau)^(-2 kappa) f(gamma tau); two_kappa = 2 kappa. For odd
/// two_kappa, j = (c/d) eps_d^-1 sqrt(c tau + d) and d must be odd.
Complex slash_num(const TauFunction& f, int two_kappa, const ModularMatrix& g, const Complex& tau);

}  // namespace maass
