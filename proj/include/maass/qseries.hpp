#pragma once

// Truncated series in q^(1/d) over an exact coefficient ring. Exponents are
// stored as integers k meaning q^(k/den); a series is known modulo
// q^(trunc/den) and every stored key satisfies k < trunc.

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maass/exact.hpp"

namespace maass {

/// Laurent polynomial in zeta^(1/zden) with ExactScalar coefficients.
class ZetaPoly {
 public:
  ZetaPoly() = default;
  ZetaPoly(long c) : ZetaPoly(ExactScalar(c)) {}  // NOLINT(implicit)
  ZetaPoly(const ExactScalar& c);                 // NOLINT(implicit)
  static ZetaPoly monomial(const ExactScalar& c, long exp, long zden = 1);

  long zden() const { return zden_; }
  const std::map<long, ExactScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Coefficient of zeta^(num/den).
  ExactScalar coeff(long num, long den = 1) const;
  long min_exp() const;  // in units of 1/zden
  long max_exp() const;

  ZetaPoly rescaled(long new_zden) const;
  ZetaPoly normalized() const;
  /// Multiply by zeta^(num/den).
  ZetaPoly shifted(long num, long den = 1) const;
  /// zeta -> zeta^-1.
  ZetaPoly reflected() const;

  ZetaPoly operator-() const;
  ZetaPoly& operator+=(const ZetaPoly& o);
  ZetaPoly& operator-=(const ZetaPoly& o);
  ZetaPoly& operator*=(const ZetaPoly& o);
  ZetaPoly& operator*=(const ExactScalar& c);
  /// Only monomials are invertible; throws NonUnitLeadingTerm otherwise.
  ZetaPoly inverse() const;

  bool operator==(const ZetaPoly& o) const;
  bool operator!=(const ZetaPoly& o) const { return !(*this == o); }

  Complex evaluate(const Complex& z) const;
  std::string to_string() const;

  void add_term(long exp, const ExactScalar& c);

 private:
  long zden_ = 1;
  std::map<long, ExactScalar> terms_;
};

ZetaPoly operator+(ZetaPoly a, const ZetaPoly& b);
ZetaPoly operator-(ZetaPoly a, const ZetaPoly& b);
ZetaPoly operator*(ZetaPoly a, const ZetaPoly& b);

namespace detail {
inline bool coef_is_zero(const ExactScalar& c) { return c.is_zero(); }
inline bool coef_is_zero(const ZetaPoly& c) { return c.is_zero(); }
inline ExactScalar coef_inverse(const ExactScalar& c) {
  if (c.is_zero()) throw NonUnitLeadingTerm("leading coefficient is zero");
  return c.inverse();
}
inline ZetaPoly coef_inverse(const ZetaPoly& c) { return c.inverse(); }
inline std::string coef_string(const ExactScalar& c) { return c.to_string(); }
inline std::string coef_string(const ZetaPoly& c) { return c.to_string(); }
}  // namespace detail

template <class Coef>
class Series {
 public:
  Series() = default;
  /// The zero series known modulo q^(trunc/den).
  Series(long den, long trunc) : den_(den), trunc_(trunc) {
    if (den <= 0) throw InvalidArgument("series denominator must be positive");
  }

  static Series constant(const Coef& c, long den, long trunc) {
    return monomial(c, 0, den, trunc);
  }
  static Series monomial(const Coef& c, long k, long den, long trunc) {
    Series s(den, trunc);
    s.set(k, c);
    return s;
  }

  long den() const { return den_; }
  long trunc() const { return trunc_; }
  const std::map<long, Coef>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Lowest stored key, or trunc for the zero series.
  long valuation() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }

  /// Coefficient of q^(k/den).
  Coef coeff(long k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Coef() : it->second;
  }
  /// Coefficient of q^(num/d) for an arbitrary rational exponent.
  Coef coeff_at(long num, long d = 1) const {
    if ((num * den_) % d != 0) return Coef();
    return coeff(num * den_ / d);
  }
  /// Whether the coefficient of q^(num/d) is determined.
  bool known_at(long num, long d = 1) const { return num * den_ < trunc_ * d; }

  void set(long k, const Coef& c) {
    if (k >= trunc_) return;
    if (detail::coef_is_zero(c)) {
      terms_.erase(k);
    } else {
      terms_[k] = c;
    }
  }
  void add(long k, const Coef& c) {
    if (k >= trunc_ || detail::coef_is_zero(c)) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second += c;
    if (detail::coef_is_zero(it->second)) terms_.erase(it);
  }

  /// Same series on the finer lattice q^(1/new_den); new_den must be a
  /// multiple of den.
  Series rescaled(long new_den) const {
    if (new_den % den_ != 0) throw InvalidArgument("rescale to a non-multiple lattice");
    const long f = new_den / den_;
    Series r(new_den, trunc_ * f);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k * f, c);
    return r;
  }

  /// Coarsest lattice holding every key and the truncation order.
  Series normalized() const {
    long g = std::gcd(den_, trunc_);
    for (const auto& kv : terms_) g = std::gcd(g, kv.first);
    if (g <= 1) return *this;
    Series r(den_ / g, trunc_ / g);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k / g, c);
    return r;
  }

  /// Lower the truncation to q^(num/d) (no-op if already lower).
  Series truncated(long num, long d = 1) const {
    const long l = std::lcm(den_, d);
    Series r = rescaled(l);
    const long t = num * (l / d);
    if (t >= r.trunc_) return normalized();
    r.trunc_ = t;
    r.terms_.erase(r.terms_.lower_bound(t), r.terms_.end());
    return r.normalized();
  }

  /// Multiply by q^(num/d).
  Series shifted(long num, long d = 1) const {
    const long l = std::lcm(den_, d);
    Series r = rescaled(l);
    const long s = num * (l / d);
    Series out(l, r.trunc_ + s);
    for (const auto& [k, c] : r.terms_) out.terms_.emplace(k + s, c);
    return out.normalized();
  }

  /// q -> q^s for a positive integer s.
  Series substituted(long s) const {
    if (s <= 0) throw InvalidArgument("substitution exponent must be positive");
    Series r(den_, trunc_ * s);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k * s, c);
    return r.normalized();
  }

  template <class F>
  Series map_coeffs(F&& f) const {
    Series r(den_, trunc_);
    for (const auto& [k, c] : terms_) r.set(k, f(c));
    return r;
  }

  Series operator-() const {
    return map_coeffs([](const Coef& c) { return -c; });
  }

  Series& operator+=(const Series& o) {
    const long l = std::lcm(den_, o.den_);
    Series a = rescaled(l);
    const Series b = o.rescaled(l);
    a.trunc_ = std::min(a.trunc_, b.trunc_);
    a.terms_.erase(a.terms_.lower_bound(a.trunc_), a.terms_.end());
    for (const auto& [k, c] : b.terms_) a.add(k, c);
    return *this = a.normalized();
  }
  Series& operator-=(const Series& o) { return *this += -o; }

  Series& operator*=(const Series& o) {
    const long l = std::lcm(den_, o.den_);
    const Series a = rescaled(l);
    const Series b = o.rescaled(l);
    const long t = std::min(a.trunc_ + b.valuation(), b.trunc_ + a.valuation());
    Series r(l, t);
    for (const auto& [ka, ca] : a.terms_) {
      if (ka + b.valuation() >= t) break;
      for (const auto& [kb, cb] : b.terms_) {
        if (ka + kb >= t) break;
        Coef p = ca;
        p *= cb;
        r.add(ka + kb, p);
      }
    }
    return *this = r.normalized();
  }

  template <class S>
  Series scaled(const S& s) const {
    return map_coeffs([&](const Coef& c) {
      Coef r = c;
      r *= s;
      return r;
    });
  }

  /// Two-sided inverse; the leading coefficient must be a unit of Coef.
  Series inverse() const {
    if (terms_.empty()) throw NonUnitLeadingTerm("cannot invert a series known to be zero");
    const long v = valuation();
    const long rel = trunc_ - v;  // relative precision
    const Coef a0inv = detail::coef_inverse(terms_.begin()->second);
    // a = q^v (a0 + sum_{j>0} a_j q^j); b = q^-v sum b_j q^j.
    std::vector<std::pair<long, Coef>> a;
    for (const auto& [k, c] : terms_) {
      if (k != v) a.emplace_back(k - v, c);
    }
    std::vector<Coef> b(static_cast<size_t>(rel));
    std::vector<bool> nz(static_cast<size_t>(rel), false);
    b[0] = a0inv;
    nz[0] = true;
    for (long k = 1; k < rel; ++k) {
      Coef acc;
      bool any = false;
      for (const auto& [j, aj] : a) {
        if (j > k) break;
        if (!nz[static_cast<size_t>(k - j)]) continue;
        Coef p = aj;
        p *= b[static_cast<size_t>(k - j)];
        if (!any) {
          acc = p;
          any = true;
        } else {
          acc += p;
        }
      }
      if (!any || detail::coef_is_zero(acc)) continue;
      Coef bk = -acc;
      bk *= a0inv;
      b[static_cast<size_t>(k)] = bk;
      nz[static_cast<size_t>(k)] = true;
    }
    Series r(den_, rel - v);
    for (long k = 0; k < rel; ++k) {
      if (nz[static_cast<size_t>(k)]) r.set(k - v, b[static_cast<size_t>(k)]);
    }
    return r.normalized();
  }

  /// Integer power; negative exponents go through inverse().
  Series pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Series result = constant(Coef(1), den_, trunc_ - valuation());
    if (e == 0) return result;
    Series base = *this;
    bool first = true;
    while (e > 0) {
      if (e & 1) {
        if (first) {
          result = base;
          first = false;
        } else {
          result *= base;
        }
      }
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Lowest exponent (as a fraction num/den) where a and b disagree on
  /// their common known range.
  static std::optional<std::pair<long, long>> first_mismatch(const Series& a,
                                                             const Series& b) {
    const long l = std::lcm(a.den_, b.den_);
    const Series x = a.rescaled(l);
    const Series y = b.rescaled(l);
    const long t = std::min(x.trunc_, y.trunc_);
    auto ix = x.terms_.begin();
    auto iy = y.terms_.begin();
    while (true) {
      const bool ex = ix == x.terms_.end() || ix->first >= t;
      const bool ey = iy == y.terms_.end() || iy->first >= t;
      if (ex && ey) return std::nullopt;
      long k;
      if (ex) {
        k = iy->first;
      } else if (ey) {
        k = ix->first;
      } else if (ix->first != iy->first) {
        k = std::min(ix->first, iy->first);
      } else {
        if (ix->second != iy->second) return reduce(ix->first, l);
        ++ix;
        ++iy;
        continue;
      }
      return reduce(k, l);
    }
  }

  /// Throws MismatchAtOrder if a and b differ on their common known range.
  static void require_equal(const Series& a, const Series& b, const std::string& what) {
    if (auto mm = first_mismatch(a, b)) {
      throw MismatchAtOrder(mm->first, mm->second,
                            what + ": first mismatch at q^(" + std::to_string(mm->first) +
                                "/" + std::to_string(mm->second) + ")");
    }
  }

  std::string to_string(size_t max_terms = 12) const {
    std::string s;
    size_t n = 0;
    for (const auto& [k, c] : terms_) {
      if (n++ == max_terms) {
        s += " + ...";
        break;
      }
      if (!s.empty()) s += " + ";
      s += detail::coef_string(c) + "*q^(" + std::to_string(k) + "/" +
           std::to_string(den_) + ")";
    }
    if (s.empty()) s = "0";
    return s + " + O(q^(" + std::to_string(trunc_) + "/" + std::to_string(den_) + "))";
  }

 private:
  static std::pair<long, long> reduce(long k, long d) {
    const long g = std::gcd(k, d);
    return {k / (g == 0 ? 1 : g), d / (g == 0 ? 1 : g)};
  }

  long den_ = 1;
  long trunc_ = 0;
  std::map<long, Coef> terms_;
};

template <class C>
Series<C> operator+(Series<C> a, const Series<C>& b) {
  return a += b;
}
template <class C>
Series<C> operator-(Series<C> a, const Series<C>& b) {
  return a -= b;
}
template <class C>
Series<C> operator*(Series<C> a, const Series<C>& b) {
  return a *= b;
}

using QSeries = Series<ExactScalar>;
using ZetaQSeries = Series<ZetaPoly>;

/// Numeric value of sum c_k q^(k/den) with q^(1/den) = e(tau/den).
Complex evaluate(const QSeries& s, const Complex& tau);
/// Numeric value with zeta = e(z).
Complex evaluate(const ZetaQSeries& s, const Complex& z, const Complex& tau);

/// Coefficient of zeta^ell as a QSeries with the same truncation.
QSeries coeff_extract(const ZetaQSeries& f, long ell);
/// Coefficient of zeta^(num/den).
QSeries coeff_extract(const ZetaQSeries& f, long num, long den);
/// Embed a QSeries as zeta-constant ZetaQSeries.
ZetaQSeries lift(const QSeries& s);
/// Multiply every coefficient by zeta^(num/den).
ZetaQSeries zeta_shifted(const ZetaQSeries& f, long num, long den = 1);
/// zeta -> zeta^-1.
ZetaQSeries zeta_reflected(const ZetaQSeries& f);

/// eta(tau) = q^(1/24) prod (1 - q^k), known modulo q^T (T counts integer
/// orders of the product, so the series is known modulo q^(T + 1/24)).
QSeries eta_qexp(long T);
/// prod_i eta(s_i tau)^(e_i), known modulo q^(T + leading exponent).
QSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, long T);
/// prod_{k>=1} (1 - q^k) modulo q^T.
QSeries euler_product(long T);

}  // namespace maass
