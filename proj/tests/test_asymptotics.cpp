#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maass/asymptotics.hpp"
#include "maass/characters.hpp"

#include <random>

using namespace maass;

namespace {

using Ser = std::vector<mpq_class>;

// Power series of e^(a x) to order K.
Ser exp_series(const mpq_class& a, int K) {
  Ser s(static_cast<size_t>(K) + 1);
  mpq_class term = 1;
  for (int j = 0; j <= K; ++j) {
    s[static_cast<size_t>(j)] = term;
    term = term * a / (j + 1);
  }
  return s;
}

Ser divide(const Ser& num, const Ser& den) {
  Ser q(num.size(), 0);
  for (size_t j = 0; j < num.size(); ++j) {
    mpq_class r = num[j];
    for (size_t i = 1; i <= j; ++i) r -= den[i] * q[j - i];
    q[j] = r / den[0];
  }
  return q;
}

// k! [x^k] of x e^(zx) / (e^x - 1), after cancelling x.
mpq_class bernoulli_oracle(int k, const mpq_class& z) {
  const int K = k + 1;
  Ser num = exp_series(z, K);
  Ser den = exp_series(1, K + 1);
  den.erase(den.begin());  // (e^x - 1) / x
  den.resize(num.size());
  return divide(num, den)[static_cast<size_t>(k)] * mpq_class(factorial(k));
}

mpq_class euler_oracle(int k, const mpq_class& z) {
  Ser num = exp_series(z, k);
  for (auto& c : num) c *= 2;
  Ser den = exp_series(1, k);
  den[0] += 1;
  return divide(num, den)[static_cast<size_t>(k)] * mpq_class(factorial(k));
}

Real val(const PiPolynomial& p) { return p.evaluate().real(); }

}  // namespace

TEST_CASE("Bernoulli and Euler polynomials against series division") {
  for (int k = 0; k <= 14; ++k) {
    for (const mpq_class& z : {make_q(0), make_q(1, 2), make_q(1, 3), make_q(-5, 7)}) {
      CHECK(eval_poly(bernoulli_poly(k), z) == bernoulli_oracle(k, z));
      CHECK(eval_poly(euler_poly(k), z) == euler_oracle(k, z));
    }
  }
  CHECK(eval_poly(bernoulli_poly(0), 3) == 1);
  CHECK(eval_poly(euler_poly(0), 3) == 1);
  CHECK(eval_poly(bernoulli_poly(2), make_q(1, 2)) == make_q(-1, 12));
  CHECK(eval_poly(euler_poly(1), 0) == make_q(-1, 2));
  const long classical[] = {1, 0, -1, 0, 5, 0, -61, 0, 1385, 0, -50521};
  for (int k = 0; k <= 10; ++k) CHECK(euler_number(k) == classical[k]);
}

TEST_CASE("higher Euler numbers: exact values") {
  CHECK(higher_euler(0, 1) == PiPolynomial(ExactScalar(1)));
  CHECK(higher_euler(0, 2) == PiPolynomial(ExactScalar(GaussRational(2), -1)));
  CHECK(higher_euler(2, 2) == PiPolynomial(ExactScalar(GaussRational(make_q(1, 6)), -1)));
  CHECK(higher_euler(0, 3) == PiPolynomial(ExactScalar(GaussRational(make_q(1, 2)), 0)));
  CHECK(higher_euler(2, 1) == PiPolynomial(ExactScalar(GaussRational(make_q(1, 4)), 0)));
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= 15; k += 2) CHECK(higher_euler(k, n).is_zero());
  const HigherEulerTable tab(12, 7);
  CHECK(tab.consistent());
  CHECK(tab.at(4, 5) == higher_euler(4, 5));
  CHECK(tab.at(4, 3).terms().size() == 2);
  CHECK_THROWS_AS(tab.at(13, 1), InvalidArgument);
}

TEST_CASE("higher Euler numbers against quadrature") {
  const Precision prec{30, 1e-8};
  std::map<std::pair<int, int>, Real> quad;
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= 10; ++k) {
      quad[{k, n}] = higher_euler_quadrature(k, n, prec);
      CAPTURE(k);
      CAPTURE(n);
      CHECK(abs(val(higher_euler(k, n)) - quad[{k, n}]) < 1e-25);
    }
  CHECK(abs(quad[{1, 3}]) < 1e-28);
  CHECK(abs(quad[{2, 1}] - Real("0.25")) < 1e-28);
  CHECK(abs(quad[{0, 2}] - 2 / pi()) < 1e-28);
  // Integration-by-parts recurrence on the quadrature values alone.
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= 10; ++k) {
      const Real lower = k >= 2 ? quad[{k - 2, n}] : Real(0);
      const Real corr = Real(k * (k - 1)) / (pi() * pi() * n * (n + 1)) * lower;
      const Real rhs = Real(n) / (n + 1) * quad[{k, n}] - corr;
      CHECK(abs(quad[{k, n + 2}] - rhs) < 1e-25);
      // The opposite sign on the k(k-1) term is not consistent with the moments.
      if (k >= 2 && k % 2 == 0) CHECK(abs(quad[{k, n + 2}] - (rhs + 2 * corr)) > 1e-4);
    }
  CHECK_THROWS_AS(higher_euler_quadrature(2, 1, Precision{40, 1e-8}), PrecisionUnreachable);
}

TEST_CASE("sech^2 Fourier transform") {
  CHECK(abs(sech_square_fourier(0) - 2 / pi()) < 1e-30);
  CHECK(abs(sech_square_fourier(Real("1e-12")) - 2 / pi()) < 1e-20);
  CHECK(abs(sech_square_fourier(1) - 4 / (exp(pi()) - exp(-pi()))) < 1e-30);
  for (const char* z : {"0.3", "1", "2.5", "-1.7"}) {
    const Real zz(z);
    CHECK(abs(sech_square_fourier(zz) - sech_square_fourier_quadrature(zz)) < 1e-25);
    CHECK(sech_square_fourier(-zz) == sech_square_fourier(zz));
  }
}

TEST_CASE("a_r coefficients") {
  for (long m : {2, 3, 5, 9})
    for (long ell : {0, 1, -2, 3}) CHECK(a_coeff(0, m, 1, ell) == PiPolynomial(ExactScalar(1)));
  for (long m : {3, 4, 7})
    for (long ell : {0, 2}) CHECK(a_coeff(1, m, 2, ell) == PiPolynomial(ExactScalar(GaussRational(make_q(-(m - 2), 6)), 0)));
  std::mt19937_64 rng(0x4B57);
  for (int it = 0; it < 30; ++it) {
    const long n = 1 + static_cast<long>(rng() % 5);
    const long m = n + 1 + static_cast<long>(rng() % 5);
    const long ell = static_cast<long>(rng() % 9) - 4;
    for (int r = 0; r <= 8; ++r) CHECK(a_coeff(r, m, n, ell).is_real());
  }
  for (int r = 0; r <= 6; ++r) {
    const long m = 7, n = 3;
    const PiPolynomial want = PiPolynomial(ExactScalar(GaussRational(m - n).pow(r) * GaussRational(r % 2 ? -1 : 1), r)) * higher_euler(2 * r, n);
    CHECK(a_coeff(r, m, n, 0) == want);
  }
  CHECK_THROWS_AS(a_coeff(1, 2, 2, 0), InvalidArgument);
}

TEST_CASE("Mordell integral and its Taylor coefficients") {
  const Precision prec{30, 1e-8};
  // t -> 0 approaches the plain moment.
  CHECK(abs(mordell_quadrature(1, 4, 2, Real("1e-12"), prec) - 2 / pi()) < 1e-11);
  CHECK(abs(mordell_quadrature(2, 5, 3, Real("0.3"), prec) - mordell_quadrature(-2, 5, 3, Real("0.3"), prec)) < 1e-30);
  // Remainder after N terms shrinks by about 2^(N+1) when t halves.
  for (long ell : {0, 1}) {
    const auto ex = AsymptoticExpansion::build(4, 2, ell, 3);
    for (int N = 0; N <= 2; ++N) {
      auto trunc = ex;
      trunc.coeffs.resize(static_cast<size_t>(N) + 1);
      const Real r1 = abs(mordell_quadrature(ell, 4, 2, Real("0.01"), prec) - trunc.partial_sum(Real("0.01")));
      const Real r2 = abs(mordell_quadrature(ell, 4, 2, Real("0.005"), prec) - trunc.partial_sum(Real("0.005")));
      const double ratio = static_cast<double>(r1 / r2);
      CAPTURE(N);
      CHECK(ratio == doctest::Approx(std::pow(2.0, N + 1)).epsilon(0.15));
    }
  }
}

TEST_CASE("asymptotic evaluation") {
  for (long m : {2, 4}) {
    const Real t("0.3");
    const Real want = sqrt(t) / 2 * exp(pi() * t * (2 - m) / 12 + pi() * (m + 1) / (12 * t));
    CHECK(abs(asymptotic_eval(m, 1, 0, 0, t) / want - 1) < 1e-30);
  }
  const auto ex = AsymptoticExpansion::build(6, 4, 1, 2);
  CHECK(ex.t_exponent == make_q(-1, 12));
  CHECK(ex.inv_t_exponent == make_q(13, 12));
  // More terms help at t = 0.1.
  const Real t("0.1");
  const CertifiedReal tr = tr_character_numeric(4, 2, 0, t, 20);
  const Real e1 = abs(asymptotic_eval(4, 2, 0, 1, t) / tr.value - 1);
  const Real e3 = abs(asymptotic_eval(4, 2, 0, 3, t) / tr.value - 1);
  CHECK(e3 < e1);
  CHECK_THROWS_AS(asymptotic_eval(4, 2, 0, 1, Real(0)), InvalidArgument);
}
