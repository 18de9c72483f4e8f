#include "maass/qseries.hpp"

namespace maass {

// ---------------------------------------------------------------- ZetaPoly

ZetaPoly::ZetaPoly(const ExactScalar& c) { add_term(0, c); }

ZetaPoly ZetaPoly::monomial(const ExactScalar& c, long exp, long zden) {
  if (zden <= 0) throw InvalidArgument("zeta denominator must be positive");
  ZetaPoly p;
  p.zden_ = zden;
  p.add_term(exp, c);
  return p.normalized();
}

void ZetaPoly::add_term(long exp, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_.emplace(exp, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

ExactScalar ZetaPoly::coeff(long num, long den) const {
  if ((num * zden_) % den != 0) return ExactScalar();
  auto it = terms_.find(num * zden_ / den);
  return it == terms_.end() ? ExactScalar() : it->second;
}

long ZetaPoly::min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
long ZetaPoly::max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

ZetaPoly ZetaPoly::rescaled(long new_zden) const {
  if (new_zden == zden_) return *this;
  if (new_zden % zden_ != 0) throw InvalidArgument("rescale to a non-multiple zeta lattice");
  const long f = new_zden / zden_;
  ZetaPoly r;
  r.zden_ = new_zden;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k * f, c);
  return r;
}

ZetaPoly ZetaPoly::normalized() const {
  long g = zden_;
  for (const auto& kv : terms_) g = std::gcd(g, kv.first);
  if (g <= 1) return *this;
  ZetaPoly r;
  r.zden_ = zden_ / g;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k / g, c);
  return r;
}

ZetaPoly ZetaPoly::shifted(long num, long den) const {
  const long l = std::lcm(zden_, den);
  const ZetaPoly a = rescaled(l);
  const long s = num * (l / den);
  ZetaPoly r;
  r.zden_ = l;
  for (const auto& [k, c] : a.terms_) r.terms_.emplace(k + s, c);
  return r.normalized();
}

ZetaPoly ZetaPoly::reflected() const {
  ZetaPoly r;
  r.zden_ = zden_;
  for (const auto& [k, c] : terms_) r.terms_.emplace(-k, c);
  return r;
}

ZetaPoly ZetaPoly::operator-() const {
  ZetaPoly r;
  r.zden_ = zden_;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

ZetaPoly& ZetaPoly::operator+=(const ZetaPoly& o) {
  if (o.terms_.empty()) return *this;
  if (o.zden_ == zden_) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  const long l = std::lcm(zden_, o.zden_);
  ZetaPoly a = rescaled(l);
  const ZetaPoly b = o.rescaled(l);
  for (const auto& [k, c] : b.terms_) a.add_term(k, c);
  return *this = a.normalized();
}

ZetaPoly& ZetaPoly::operator-=(const ZetaPoly& o) { return *this += -o; }

ZetaPoly& ZetaPoly::operator*=(const ZetaPoly& o) {
  const long l = std::lcm(zden_, o.zden_);
  const ZetaPoly a = rescaled(l);
  const ZetaPoly b = o.rescaled(l);
  ZetaPoly r;
  r.zden_ = l;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
  }
  return *this = r.normalized();
}

ZetaPoly& ZetaPoly::operator*=(const ExactScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

ZetaPoly ZetaPoly::inverse() const {
  if (!is_monomial()) {
    throw NonUnitLeadingTerm("leading zeta-coefficient " + to_string() +
                             " is not a monomial");
  }
  const auto& [k, c] = *terms_.begin();
  ZetaPoly r;
  r.zden_ = zden_;
  r.terms_.emplace(-k, c.inverse());
  return r;
}

bool ZetaPoly::operator==(const ZetaPoly& o) const {
  if (zden_ == o.zden_) return terms_ == o.terms_;
  const long l = std::lcm(zden_, o.zden_);
  return rescaled(l).terms_ == o.rescaled(l).terms_;
}

Complex ZetaPoly::evaluate(const Complex& z) const {
  Complex sum(0);
  for (const auto& [k, c] : terms_) {
    sum += c.to_complex() * e2pi(z * Real(k) / Real(zden_));
  }
  return sum;
}

std::string ZetaPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s = "(";
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += c.to_string();
    if (k != 0) {
      s += "*z^" + std::to_string(k);
      if (zden_ != 1) s += "/" + std::to_string(zden_);
    }
  }
  return s + ")";
}

ZetaPoly operator+(ZetaPoly a, const ZetaPoly& b) { return a += b; }
ZetaPoly operator-(ZetaPoly a, const ZetaPoly& b) { return a -= b; }
ZetaPoly operator*(ZetaPoly a, const ZetaPoly& b) { return a *= b; }

// ---------------------------------------------------------------- series helpers

Complex evaluate(const QSeries& s, const Complex& tau) {
  Complex sum(0);
  const Real d(s.den());
  for (const auto& [k, c] : s.terms()) sum += c.to_complex() * e2pi(tau * Real(k) / d);
  return sum;
}

Complex evaluate(const ZetaQSeries& s, const Complex& z, const Complex& tau) {
  Complex sum(0);
  const Real d(s.den());
  for (const auto& [k, c] : s.terms()) sum += c.evaluate(z) * e2pi(tau * Real(k) / d);
  return sum;
}

QSeries coeff_extract(const ZetaQSeries& f, long num, long den) {
  QSeries r(f.den(), f.trunc());
  for (const auto& [k, c] : f.terms()) r.set(k, c.coeff(num, den));
  return r.normalized();
}

QSeries coeff_extract(const ZetaQSeries& f, long ell) { return coeff_extract(f, ell, 1); }

ZetaQSeries lift(const QSeries& s) {
  ZetaQSeries r(s.den(), s.trunc());
  for (const auto& [k, c] : s.terms()) r.set(k, ZetaPoly(c));
  return r;
}

ZetaQSeries zeta_shifted(const ZetaQSeries& f, long num, long den) {
  return f.map_coeffs([&](const ZetaPoly& c) { return c.shifted(num, den); });
}

ZetaQSeries zeta_reflected(const ZetaQSeries& f) {
  return f.map_coeffs([](const ZetaPoly& c) { return c.reflected(); });
}

QSeries euler_product(long T) {
  if (T < 1) throw InvalidArgument("euler_product needs T >= 1");
  // Pentagonal number theorem would be faster, but the direct product keeps
  // this independent of the identity it is tested against.
  std::vector<mpz_class> c(static_cast<size_t>(T), 0);
  c[0] = 1;
  for (long k = 1; k < T; ++k) {
    for (long j = T - 1; j >= k; --j) c[static_cast<size_t>(j)] -= c[static_cast<size_t>(j - k)];
  }
  QSeries r(1, T);
  for (long j = 0; j < T; ++j) {
    if (sgn(c[static_cast<size_t>(j)]) != 0) r.set(j, ExactScalar(GaussRational(mpq_class(c[static_cast<size_t>(j)]))));
  }
  return r;
}

QSeries eta_qexp(long T) {
  if (T < 1) throw InvalidArgument("eta_qexp needs T >= 1");
  return euler_product(T).shifted(1, 24);
}

QSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, long T) {
  if (T < 1) throw InvalidArgument("eta_quotient needs T >= 1");
  QSeries r = QSeries::constant(ExactScalar(1), 1, T);
  long lead_num = 0;  // leading exponent in units of 1/24
  for (const auto& [s, e] : factors) {
    if (s < 1) throw InvalidArgument("eta scale must be >= 1");
    if (e == 0) continue;
    const long need = (T + s - 1) / s;
    QSeries f = euler_product(need).substituted(s);
    f = f.truncated(T);
    r *= f.pow(e);
    lead_num += s * e;
  }
  return r.truncated(T).shifted(lead_num, 24);
}

}  // namespace maass
