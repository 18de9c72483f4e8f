#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maass/qseries.hpp"
#include "maass/series_json.hpp"

#include <random>
#include <set>

using namespace maass;

namespace {

ExactScalar Z(long v) { return ExactScalar(v); }

// Integer coefficients of prod (1-q^k) by the pentagonal-number pattern.
std::vector<long> pentagonal_oracle(long T) {
  std::vector<long> c(static_cast<size_t>(T), 0);
  for (long k = -T; k <= T; ++k) {
    const long e = k * (3 * k - 1) / 2;
    if (e >= 0 && e < T) c[static_cast<size_t>(e)] += (k % 2 == 0) ? 1 : -1;
  }
  return c;
}

// Number of partitions of n into parts <= k.
long partitions(long n, long k) {
  if (n == 0) return 1;
  if (n < 0 || k == 0) return 0;
  return partitions(n - k, k) + partitions(n, k - 1);
}

QSeries random_series(std::mt19937_64& rng, long den, long trunc, bool unit) {
  QSeries s(den, trunc);
  std::uniform_int_distribution<long> coef(-5, 5), dd(1, 4);
  for (long k = 0; k < trunc; ++k) {
    if (rng() % 3 == 0) continue;
    s.set(k, ExactScalar(GaussRational(make_q(coef(rng), dd(rng)), make_q(coef(rng), dd(rng)))));
  }
  if (unit) s.set(0, ExactScalar(GaussRational(make_q(coef(rng) | 1, dd(rng)), make_q(coef(rng), 3))));
  return s;
}

}  // namespace

TEST_CASE("exact scalars") {
  const ExactScalar a(GaussRational(make_q(3, 6), make_q(-2, 7)), 2);
  CHECK(a.re() == make_q(1, 2));
  CHECK((a * a.inverse()) == ExactScalar(1));
  CHECK_THROWS_AS(a + ExactScalar(1), MixedPiPower);
  CHECK((a + ExactScalar()) == a);
  CHECK((a - a).pi_exp() == 0);
  CHECK(((a - a) + ExactScalar(5)) == ExactScalar(5));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int i = 0; i < 200; ++i) {
    long p = d(rng), q = d(rng), r = d(rng), s = d(rng);
    if (p == 0 && q == 0) p = 1;
    if (r == 0) r = 3;
    if (s == 0) s = 5;
    const ExactScalar x(GaussRational(make_q(p, r), make_q(q, s)), static_cast<int>(d(rng) % 4));
    const ExactScalar y(GaussRational(make_q(r, p == 0 ? 1 : p), make_q(s, 7)), x.pi_exp());
    CHECK(((x / y) * (y / x)) == ExactScalar(1));
  }
  PiPolynomial pp = PiPolynomial(ExactScalar(2)) + PiPolynomial(ExactScalar::pi_power(1));
  CHECK(pp.terms().size() == 2);
  CHECK(abs(pp.evaluate() - Complex(2 + pi())) < 1e-30);
}

TEST_CASE("series addition") {
  const QSeries eta = eta_qexp(30);
  CHECK_FALSE(QSeries::first_mismatch(eta + QSeries(1, 40), eta).has_value());
  QSeries a = QSeries::constant(Z(1), 1, 20);
  a.add(1, Z(-1));
  QSeries b = QSeries::monomial(Z(1), 1, 1, 20);
  QSeries sum = a + b;
  CHECK(sum.terms().size() == 1);
  CHECK(sum.coeff(0) == Z(1));
  CHECK((eta + (-eta)).is_zero());
  // Truncation is the weaker of the two.
  const QSeries w = QSeries(1, 5) + QSeries(2, 7);
  CHECK(w.den() == 2);
  CHECK(w.trunc() == 7);
}

TEST_CASE("series multiplication and eta cube") {
  QSeries geo(1, 25);
  for (long k = 0; k < 25; ++k) geo.set(k, Z(1));
  QSeries one_minus_q = QSeries::constant(Z(1), 1, 25);
  one_minus_q.add(1, Z(-1));
  const QSeries prod = one_minus_q * geo;
  CHECK(prod.terms().size() == 1);
  CHECK(prod.coeff(0) == Z(1));

  // eta^3: independent cube of the pentagonal expansion.
  const long T = 60;
  const auto pent = pentagonal_oracle(T);
  std::vector<long> cube(static_cast<size_t>(T), 0);
  for (long i = 0; i < T; ++i)
    for (long j = 0; i + j < T; ++j)
      for (long k = 0; i + j + k < T; ++k)
        cube[static_cast<size_t>(i + j + k)] += pent[static_cast<size_t>(i)] * pent[static_cast<size_t>(j)] * pent[static_cast<size_t>(k)];
  const QSeries eta3 = eta_qexp(T).pow(3);
  for (long k = 0; k < T; ++k) {
    CHECK(eta3.coeff_at(24 * k + 3, 24) == Z(cube[static_cast<size_t>(k)]));
  }
  // Jacobi: (-1)^j (2j+1) at k = j(j+1)/2.
  for (long j = 0; j * (j + 1) / 2 < T; ++j) {
    CHECK(cube[static_cast<size_t>(j * (j + 1) / 2)] == ((j % 2 == 0) ? 1 : -1) * (2 * j + 1));
  }
  long nonzero = 0;
  for (long v : cube) nonzero += v != 0;
  long tri = 0;
  for (long j = 0; j * (j + 1) / 2 < T; ++j) ++tri;
  CHECK(nonzero == tri);
  CHECK(QSeries(1, T).valuation() == T);

  const ZetaPoly zp = ZetaPoly::monomial(Z(1), 1) + ZetaPoly::monomial(Z(1), -1);
  const ZetaPoly zm = ZetaPoly::monomial(Z(1), 1) - ZetaPoly::monomial(Z(1), -1);
  CHECK((zp * zm) == (ZetaPoly::monomial(Z(1), 2) - ZetaPoly::monomial(Z(1), -2)));
}

TEST_CASE("series inversion") {
  QSeries one_minus_q = QSeries::constant(Z(1), 1, 30);
  one_minus_q.add(1, Z(-1));
  const QSeries inv = one_minus_q.inverse();
  for (long k = 0; k < 30; ++k) CHECK(inv.coeff(k) == Z(1));

  const QSeries p = eta_qexp(12).inverse();
  CHECK(p.valuation() * 24 == -1 * p.den());
  for (long k = 0; k <= 10; ++k) {
    CHECK(p.coeff_at(24 * k - 1, 24) == Z(partitions(k, k)));
  }
  const QSeries eta = eta_qexp(20);
  CHECK_FALSE(QSeries::first_mismatch(eta.inverse().inverse(), eta).has_value());

  CHECK_THROWS_AS(QSeries(1, 10).inverse(), NonUnitLeadingTerm);
  ZetaQSeries zs = ZetaQSeries::constant(ZetaPoly(1) + ZetaPoly::monomial(Z(1), 1), 1, 5);
  CHECK_THROWS_AS(zs.inverse(), NonUnitLeadingTerm);
}

TEST_CASE("random ring laws") {
  std::mt19937_64 rng(0x4B57);
  for (int it = 0; it < 30; ++it) {
    const QSeries a = random_series(rng, 2, 16, false);
    const QSeries b = random_series(rng, 3, 24, false);
    const QSeries c = random_series(rng, 1, 8, false);
    CHECK_FALSE(QSeries::first_mismatch((a * b) * c, a * (b * c)).has_value());
    CHECK_FALSE(QSeries::first_mismatch(a * (b + c), a * b + a * c).has_value());
    CHECK_FALSE(QSeries::first_mismatch(a * b, b * a).has_value());
    CHECK_FALSE(QSeries::first_mismatch(a + b, b + a).has_value());
  }
  for (int it = 0; it < 200; ++it) {
    const QSeries a = random_series(rng, 1 + static_cast<long>(rng() % 3), 12, true);
    const QSeries one = QSeries::constant(Z(1), 1, 100);
    CHECK_FALSE(QSeries::first_mismatch(a * a.inverse(), one).has_value());
    CHECK_FALSE(QSeries::first_mismatch(a.inverse() * a, one).has_value());
  }
}

TEST_CASE("eta expansions") {
  const long T = 200;
  const QSeries eta = eta_qexp(T);
  CHECK(eta.coeff_at(1, 24) == Z(1));
  std::set<long> pent;
  for (long k = -T; k <= T; ++k) pent.insert(k * (3 * k - 1) / 2);
  for (const auto& [key, c] : eta.terms()) {
    const long num = key * 24 / eta.den() - 1;
    REQUIRE(num % 24 == 0);
    CHECK(pent.count(num / 24) == 1);
    CHECK((c == Z(1) || c == Z(-1)));
  }
  for (long e : pent) {
    if (e >= 0 && e < T) CHECK_FALSE(eta.coeff_at(24 * e + 1, 24).is_zero());
  }
  CHECK_FALSE(QSeries::first_mismatch(eta_qexp(30).substituted(2), eta_quotient({{2, 1}}, 60)).has_value());
  CHECK_FALSE(QSeries::first_mismatch(eta_quotient({{1, 1}}, 40), eta_qexp(40)).has_value());
  CHECK_FALSE(QSeries::first_mismatch(eta_quotient({{1, 3}}, 40), eta_qexp(40).pow(3)).has_value());
  // eta(2tau)^2 / eta(tau) = q^(1/8) (1 + q + q^3 + q^6 + ...) (triangular numbers).
  const QSeries h = eta_quotient({{2, 2}, {1, -1}}, 40);
  for (long k = 0; k < 40; ++k) {
    bool tri = false;
    for (long j = 0; j * (j + 1) / 2 <= k; ++j) tri |= j * (j + 1) / 2 == k;
    CHECK(h.coeff_at(8 * k + 1, 8) == Z(tri ? 1 : 0));
  }
}

TEST_CASE("zeta coefficient extraction and json round trip") {
  ZetaQSeries one = ZetaQSeries::constant(ZetaPoly(1), 1, 10);
  CHECK(coeff_extract(one, 0).coeff(0) == Z(1));
  ZetaQSeries zq = ZetaQSeries::monomial(ZetaPoly::monomial(Z(1), 2), 1, 1, 10);
  const QSeries ex = coeff_extract(zq, 2);
  CHECK(ex.coeff(1) == Z(1));
  CHECK(ex.terms().size() == 1);

  const QSeries eta = eta_qexp(25).scaled(ExactScalar(GaussRational(make_q(2, 3), make_q(-1, 5)), -1));
  CHECK_FALSE(QSeries::first_mismatch(qseries_from_json(to_json(eta)), eta).has_value());
  CHECK(qseries_from_json(to_json(eta)).trunc() == eta.trunc());
  ZetaQSeries z2 = ZetaQSeries::monomial(ZetaPoly::monomial(Z(3), -1, 2), 3, 8, 40);
  z2.add(5, ZetaPoly::monomial(ExactScalar(GaussRational(0, 1)), 4));
  CHECK_FALSE(ZetaQSeries::first_mismatch(zeta_qseries_from_json(to_json(z2)), z2).has_value());
}
