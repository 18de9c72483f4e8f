#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maass/characters.hpp"

#include <map>

using namespace maass;

namespace {

ExactScalar Z(long v) { return ExactScalar(v); }

using Grid = std::map<std::pair<long, long>, long>;  // (2*q-exponent, zeta-exponent) -> coeff

// Brute-force product expansion, one binomial/geometric factor at a time,
// keeping only q-exponents below T.
Grid chF_oracle(long m, long n, long T) {
  Grid g{{{0, 0}, 1}};
  auto mul = [&](const Grid& f) {
    Grid r;
    for (const auto& [ka, ca] : g)
      for (const auto& [kb, cb] : f) {
        const long qe = ka.first + kb.first;
        if (qe < 2 * T) r[{qe, ka.second + kb.second}] += ca * cb;
      }
    g.clear();
    for (const auto& [k, c] : r)
      if (c != 0) g[k] = c;
  };
  for (long k = 1; 2 * k - 1 < 2 * T; ++k) {
    const long a = 2 * k - 1;
    for (int dir : {1, -1}) {
      for (long i = 0; i < m; ++i) mul({{{0, 0}, 1}, {{a, dir}, 1}});
      for (long i = 0; i < n; ++i) {
        Grid geo;
        for (long j = 0; j * a < 2 * T; ++j) geo[{j * a, j * dir}] = 1;
        mul(geo);
      }
    }
  }
  return g;
}

}  // namespace

TEST_CASE("generating function against brute-force product") {
  for (auto [m, n] : std::vector<std::pair<long, long>>{{4, 2}, {3, 1}, {6, 4}}) {
    const long T = 6;
    const ZetaQSeries f = chF_expansion(m, n, T);
    const Grid g = chF_oracle(m, n, T);
    long checked = 0;
    for (long qe = 0; qe < 2 * T; ++qe) {
      for (long z = -2 * T; z <= 2 * T; ++z) {
        auto it = g.find({qe, z});
        const long want = it == g.end() ? 0 : it->second;
        CHECK(coeff_extract(f, z).coeff_at(qe, 2) == Z(want));
        ++checked;
      }
    }
    CHECK(checked > 0);
    // zeta-degree at q^(j/2) is at most j (in half-units: |z| <= qe).
    for (const auto& [k, p] : f.terms()) {
      const long qe = k * 2 / f.den();
      CHECK(std::max(-p.min_exp(), p.max_exp()) <= qe * p.zden());
    }
  }
  const ZetaQSeries f = chF_expansion(4, 2, 10);
  CHECK(coeff_extract(f, 0).coeff(0) == Z(1));
  CHECK(coeff_extract(f, 1).coeff_at(1, 2) == Z(6));
  CHECK(coeff_extract(f, 0).coeff_at(1, 1) == Z(36));
  CHECK(coeff_extract(chF_expansion(6, 2, 4), 0).coeff_at(1, 1) == Z(64));
}

TEST_CASE("specialized characters") {
  CHECK(tr_character(4, 2, 0, 20).coeff(0) == Z(1));
  CHECK(tr_character(4, 2, 0, 20).coeff_at(1, 1) == Z(35));
  for (auto [m, n] : std::vector<std::pair<long, long>>{{4, 2}, {6, 2}, {5, 3}, {3, 1}}) {
    const ZetaQSeries f = chF_expansion(m, n, 20);
    for (long ell = 1; ell <= 6; ++ell) {
      CHECK_FALSE(QSeries::first_mismatch(coeff_extract(f, ell), coeff_extract(f, -ell)).has_value());
    }
  }
  CHECK_FALSE(QSeries::first_mismatch(tr_character(4, 2, 3, 10), tr_character(4, 2, -3, 10)).has_value());
  CHECK_THROWS_AS(chF_expansion(2, 4, 5), InvalidArgument);
}

TEST_CASE("numeric character value agrees with the exact series") {
  for (auto [m, n, ell] : std::vector<std::tuple<long, long, long>>{{4, 2, 0}, {4, 2, 1}, {6, 4, 0}, {2, 1, 0}}) {
    const Real t("0.6");
    const QSeries tr = tr_character(m, n, ell, 60);
    const Complex exact = evaluate(tr, Complex(Real(0), t));
    const CertifiedReal num = tr_character_numeric(m, n, ell, t, 30);
    CHECK(abs(exact.imag()) < 1e-40);
    CHECK(abs(exact.real() - num.value) / num.value < 1e-28);
    CHECK(num.abs_error / num.value < 1e-29);
  }
  CHECK_THROWS_AS(tr_character_numeric(4, 2, 0, Real("0.1"), 40), PrecisionUnreachable);
}

TEST_CASE("triple product identity") {
  const ZetaQSeries s = theta_sum_zeta(30);
  const ZetaQSeries p = theta_product_zeta(30);
  CHECK_FALSE(ZetaQSeries::first_mismatch(s, p).has_value());
  CHECK(s.trunc() * 1 == 30 * s.den());
}

TEST_CASE("shift to the theta quotient") {
  CHECK_NOTHROW(phi_shift_consistency(4, 2, 20));
  CHECK_NOTHROW(phi_shift_consistency(6, 2, 12));
  CHECK_THROWS_AS(phi_shift_consistency(4, 2, 10, 1), MismatchAtOrder);
  try {
    phi_shift_consistency(4, 2, 10, 1);
  } catch (const MismatchAtOrder& e) {
    // eta^(n-m+1) shifts the leading exponent by 1/24: the constant term differs.
    CHECK(e.num() == 0);
  }
}

TEST_CASE("theta eps-expansions") {
  const long T = 20;
  const EpsSeries star = theta_eps_series(ThetaKind::at_zero_star, 5, T);
  const EpsSeries half = theta_eps_series(ThetaKind::at_half, 5, T);
  const EpsSeries th = theta_eps_series(ThetaKind::at_zero, 5, T);
  // theta'(0) = -2 pi eta^3
  const QSeries eta3 = eta_qexp(T).pow(3).scaled(ExactScalar(GaussRational(-2), 1));
  CHECK_FALSE(QSeries::first_mismatch(star.coeff(0), eta3).has_value());
  CHECK_FALSE(QSeries::first_mismatch(th.coeff(1), eta3).has_value());
  CHECK(th.coeff(0).is_zero());
  // theta(1/2) = -2 eta(2tau)^2 / eta(tau)
  const QSeries h = eta_quotient({{2, 2}, {1, -1}}, T).scaled(Z(-2));
  CHECK_FALSE(QSeries::first_mismatch(half.coeff(0), h).has_value());
  for (int r : {1, 3, 5}) {
    CHECK(star.coeff(r).is_zero());
    CHECK(half.coeff(r).is_zero());
  }
}

TEST_CASE("Laurent coefficients match the eta-quotient closed forms") {
  for (long m : {4, 6, 8}) {
    CAPTURE(m);
    const long T = 20;
    QSeries::require_equal(dtilde(m, 2, 1, T), dtilde_closed_form(m, 2, 1, T), "n=2");
    const auto d4 = dtilde_all(m + 2, 4, T);
    QSeries::require_equal(d4[1], dtilde_closed_form(m + 2, 4, 2, T), "n=4 j=2");
    QSeries::require_equal(d4[0], dtilde_closed_form(m + 2, 4, 1, T), "n=4 j=1");
    CHECK(d4[0].trunc() >= T * d4[0].den());
  }
  // Leading term of Dtilde_2 for n = 2: -2^m q^((m-2)/8).
  CHECK(dtilde(6, 2, 1, 5).coeff_at(4, 8) == Z(-64));
}

TEST_CASE("E2 and the theta log-derivatives") {
  const QSeries e2 = e2_expansion(1, 10);
  CHECK(e2.coeff(0) == Z(1));
  CHECK(e2.coeff(1) == Z(-24));
  CHECK(e2.coeff(2) == Z(-72));
  CHECK(e2_expansion(2, 10).coeff(2) == Z(-24));
  const ThetaLogDerivatives t = theta_quotient_log_derivatives(30);
  CHECK(t.at_half.coeff(0) == ExactScalar(GaussRational(make_q(1, 4))));
  CHECK(t.at_zero.coeff(0) == ExactScalar(GaussRational(make_q(1, 12))));
}

TEST_CASE("almost holomorphic D_r") {
  const auto dt = dtilde_all(6, 4, 12);
  const AlmostHolSeries d4 = d_from_dtilde(6, 4, 4, dt);
  const AlmostHolSeries d2 = d_from_dtilde(6, 4, 2, dt);
  CHECK(d4.degree() == 0);
  CHECK(d2.degree() == 1);
  CHECK_FALSE(QSeries::first_mismatch(d2.coeffs[1], -dt[1]).has_value());
  const Complex tau(Real("0.1"), Real("1.1"));
  const Complex want = evaluate(dt[0], tau) - Real(2) / (8 * pi() * tau.imag()) * evaluate(dt[1], tau);
  CHECK(abs(d2.evaluate(tau) - want) < 1e-25);
  const AlmostHolSeries d2n2 = d_from_dtilde(4, 2, 2, 12);
  CHECK(d2n2.degree() == 0);
  CHECK_THROWS_AS(d_from_dtilde(6, 4, 3, dt), InvalidArgument);
}
