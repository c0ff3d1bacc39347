#pragma once

// Exact univariate Laurent polynomials in q over the rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcongr/detail/zpoly.hpp"

namespace qcongr {

/// Exact rational coefficient. GMP keeps it canonical: gcd(num, den) = 1, den > 0.
using Rat = mpq_class;

using Exponent = std::int64_t;

/// Thrown by exact division when the divisor leaves a remainder.
struct NotDivisible : std::domain_error {
  using std::domain_error::domain_error;
};

/// Sparse Laurent polynomial: sorted (exponent, coefficient) pairs with no
/// zero coefficients, so equality of values is equality of term lists.
class LaurentPoly {
 public:
  using Term = std::pair<Exponent, Rat>;

  LaurentPoly() = default;
  LaurentPoly(long c) : LaurentPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Rat& c) {                   // NOLINT(google-explicit-constructor)
    if (sgn(c) != 0) terms_.emplace_back(0, c);
  }

  static LaurentPoly monomial(const Rat& c, Exponent e) {
    LaurentPoly p;
    if (sgn(c) != 0) p.terms_.emplace_back(e, c);
    return p;
  }
  static LaurentPoly q(Exponent e = 1) { return monomial(Rat(1), e); }

  /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
  static LaurentPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    LaurentPoly p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(p.terms_, [](const Term& t) { return sgn(t.second) == 0; });
    return p;
  }
  static LaurentPoly from_terms(std::initializer_list<std::pair<Exponent, long>> terms) {
    std::vector<Term> v;
    for (auto [e, c] : terms) v.emplace_back(e, Rat(c));
    return from_terms(std::move(v));
  }

  /// c_0 + c_1 q + c_2 q^2 + ... from ascending integer coefficients.
  static LaurentPoly from_dense(const detail::ZPoly& coeffs, Exponent shift = 0, const Rat& scale = 1) {
    LaurentPoly p;
    if (sgn(scale) == 0) return p;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (sgn(coeffs[i]) == 0) continue;
      Rat c(coeffs[i]);
      if (scale != 1) c *= scale;
      p.terms_.emplace_back(shift + static_cast<Exponent>(i), std::move(c));
    }
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

  Exponent min_exp() const { return require_nonzero().front().first; }
  Exponent max_exp() const { return require_nonzero().back().first; }
  /// Coefficient of the highest power.
  const Rat& leading() const { return require_nonzero().back().second; }

  Rat coeff(Exponent e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, Exponent x) { return t.first < x; });
    return (it != terms_.end() && it->first == e) ? it->second : Rat(0);
  }

  /// Ordinary polynomial: no negative exponents.
  bool is_polynomial() const { return terms_.empty() || terms_.front().first >= 0; }

  /// Multiplies by q^k.
  LaurentPoly shifted(Exponent k) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.first += k;
    return r;
  }

  Rat evaluate(const Rat& t) const {
    if (sgn(t) == 0 && !is_polynomial()) throw std::domain_error("evaluate: negative power of zero");
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
      Rat base = e >= 0 ? t : Rat(1) / t;
      Rat power = 1;
      mpz_pow_ui(power.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e >= 0 ? e : -e));
      mpz_pow_ui(power.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e >= 0 ? e : -e));
      acc += c * power;
    }
    return acc;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, false); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, true); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Rat& c, const LaurentPoly& a) {
    if (sgn(c) == 0) return {};
    LaurentPoly r = a;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

 private:
  const std::vector<Term>& require_nonzero() const {
    if (terms_.empty()) throw std::domain_error("LaurentPoly: zero polynomial has no exponents");
    return terms_;
  }

  static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
    LaurentPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        r.terms_.emplace_back(j->first, subtract ? Rat(-j->second) : j->second);
        ++j;
      } else {
        Rat c = subtract ? Rat(i->second - j->second) : Rat(i->second + j->second);
        if (sgn(c) != 0) r.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

namespace detail {

/// value = scale * q^shift * prim(q) with prim primitive over Z,
/// prim(0) != 0 and positive leading coefficient.
struct ScaledPoly {
  Rat scale;
  Exponent shift = 0;
  ZPoly prim;
};

inline ScaledPoly to_scaled(const LaurentPoly& p) {
  ScaledPoly out;
  if (p.is_zero()) {
    out.scale = 0;
    return out;
  }
  mpz_class den_lcm = 1;
  for (const auto& [e, c] : p.terms()) {
    const mpz_class& d = c.get_den();
    if (d != 1) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  out.shift = p.min_exp();
  out.prim.resize(static_cast<std::size_t>(p.max_exp() - out.shift + 1));
  for (const auto& [e, c] : p.terms()) {
    mpz_class& slot = out.prim[static_cast<std::size_t>(e - out.shift)];
    if (den_lcm == 1) {
      slot = c.get_num();
    } else {
      mpz_divexact(slot.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
      slot *= c.get_num();
    }
  }
  mpz_class cont = content(out.prim);
  if (sgn(out.prim.back()) < 0) cont = -cont;
  if (cont != 1) {
    for (auto& v : out.prim) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), cont.get_mpz_t());
  }
  out.scale = Rat(cont, den_lcm);
  out.scale.canonicalize();
  return out;
}

inline LaurentPoly from_scaled(const ScaledPoly& s) { return LaurentPoly::from_dense(s.prim, s.shift, s.scale); }

}  // namespace detail

inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1 || b.size() == 1) {
    const LaurentPoly& mono = a.size() == 1 ? a : b;
    const LaurentPoly& other = a.size() == 1 ? b : a;
    return mono.terms_[0].second * other.shifted(mono.terms_[0].first);
  }
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  const double span = static_cast<double>(a.max_exp() - a.min_exp()) + static_cast<double>(b.max_exp() - b.min_exp()) + 1;
  if (span > 4 * pairs + 4096) {
    std::map<Exponent, Rat> acc;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
    std::vector<LaurentPoly::Term> v(acc.begin(), acc.end());
    return LaurentPoly::from_terms(std::move(v));
  }
  // Dense integer convolution of the scaled forms.
  detail::ScaledPoly sa = detail::to_scaled(a);
  detail::ScaledPoly sb = detail::to_scaled(b);
  detail::ZPoly prod = detail::mul(sa.prim, sb.prim);
  return LaurentPoly::from_dense(prod, sa.shift + sb.shift, sa.scale * sb.scale);
}

/// Exact quotient in the Laurent ring. Powers of q are units, so both
/// sides are cleared of q-power factors before dividing.
inline LaurentPoly divexact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("divexact: zero divisor");
  if (a.is_zero()) return {};
  detail::ScaledPoly sa = detail::to_scaled(a);
  detail::ScaledPoly sb = detail::to_scaled(b);
  auto quot = detail::divexact(sa.prim, sb.prim);
  if (!quot) throw NotDivisible("divexact: divisor leaves a nonzero remainder");
  return LaurentPoly::from_dense(*quot, sa.shift - sb.shift, sa.scale / sb.scale);
}

/// Monic gcd (leading coefficient 1, nonzero constant term) of the
/// q-power-cleared arguments. gcd(p, 0) is p made monic.
inline LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd: both arguments are zero");
  detail::ZPoly g = detail::gcd(detail::to_scaled(a).prim, detail::to_scaled(b).prim);
  return LaurentPoly::from_dense(g, 0, Rat(1) / Rat(g.back()));
}

/// Substitutes q -> q^m.
inline LaurentPoly subst_power(const LaurentPoly& a, Exponent m) {
  if (m < 1) throw std::invalid_argument("subst_power: m must be positive");
  std::vector<LaurentPoly::Term> terms(a.terms().begin(), a.terms().end());
  for (auto& t : terms) t.first *= m;
  return LaurentPoly::from_terms(std::move(terms));
}

inline LaurentPoly pow(LaurentPoly base, unsigned long exp) {
  LaurentPoly result(1);
  while (exp != 0) {
    if (exp & 1U) result *= base;
    exp >>= 1U;
    if (exp != 0) base *= base;
  }
  return result;
}

}  // namespace qcongr
