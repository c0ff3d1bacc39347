#pragma once

// Cyclotomic polynomials, q-integers, q-Pochhammer products and
// Gaussian binomial coefficients.

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "qcongr/laurent_poly.hpp"

namespace qcongr {

/// (c q^a; q^s)_k = prod_{j=0}^{k-1} (1 - c q^{a + j s}).
struct PochSpec {
  Rat coeff = 1;
  Exponent base_exp = 1;
  Exponent step = 1;
  Exponent length = 0;
};

namespace detail {

inline std::vector<long> divisors(long n) {
  std::vector<long> small;
  std::vector<long> large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline int moebius(long n) {
  int mu = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

/// q^n - 1 as a dense integer vector.
inline ZPoly q_power_minus_one(long n) {
  ZPoly p(static_cast<std::size_t>(n) + 1);
  p[0] = -1;
  p.back() = 1;
  return p;
}

inline ZPoly cyclotomic_uncached(long n);

class CyclotomicCache {
 public:
  static CyclotomicCache& instance() {
    static CyclotomicCache cache;
    return cache;
  }

  // Entries are written once and never modified afterwards.
  const ZPoly& get(long n) {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(n);
      if (it != table_.end()) return it->second;
    }
    ZPoly value = cyclotomic_uncached(n);
    std::unique_lock lock(mutex_);
    return table_.try_emplace(n, std::move(value)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<long, ZPoly> table_;
};

// Phi_n = (q^n - 1) / prod_{d | n, d < n} Phi_d
inline ZPoly cyclotomic_uncached(long n) {
  ZPoly acc = q_power_minus_one(n);
  for (long d : divisors(n)) {
    if (d == n) break;
    auto q = divexact_schoolbook(acc, CyclotomicCache::instance().get(d));
    if (!q) throw std::logic_error("cyclotomic: inexact division");
    acc = std::move(*q);
  }
  return acc;
}

// Integer product of (den - num q^e) factors for c = num/den; the caller
// divides by den^k.
inline ZPoly pochhammer_cleared(const mpz_class& c_num, const mpz_class& c_den, Exponent base, Exponent step,
                                Exponent length, Exponent& shift_out) {
  // Factors with negative exponents are multiplied by q^{-e} to stay polynomial:
  // 1 - c q^e = q^e (q^{-e} - c).
  ZPoly acc{mpz_class(1)};
  shift_out = 0;
  for (Exponent j = 0; j < length; ++j) {
    const Exponent e = base + j * step;
    ZPoly next;
    if (e >= 0) {
      next.resize(acc.size() + static_cast<std::size_t>(e));
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (sgn(acc[i]) == 0) continue;
        mpz_addmul(next[i].get_mpz_t(), acc[i].get_mpz_t(), c_den.get_mpz_t());
        mpz_submul(next[i + static_cast<std::size_t>(e)].get_mpz_t(), acc[i].get_mpz_t(), c_num.get_mpz_t());
      }
    } else {
      shift_out += e;
      next.resize(acc.size() + static_cast<std::size_t>(-e));
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (sgn(acc[i]) == 0) continue;
        mpz_submul(next[i].get_mpz_t(), acc[i].get_mpz_t(), c_num.get_mpz_t());
        mpz_addmul(next[i + static_cast<std::size_t>(-e)].get_mpz_t(), acc[i].get_mpz_t(), c_den.get_mpz_t());
      }
    }
    trim(next);
    acc = std::move(next);
    if (acc.empty()) break;
  }
  return acc;
}

}  // namespace detail

/// n-th cyclotomic polynomial, memoized.
inline LaurentPoly cyclotomic(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic: n must be positive");
  return LaurentPoly::from_dense(detail::CyclotomicCache::instance().get(n));
}

/// Independent construction prod_{d | n} (q^{n/d} - 1)^{mu(d)}.
inline LaurentPoly cyclotomic_moebius(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_moebius: n must be positive");
  detail::ZPoly num{1};
  std::vector<long> denominators;
  for (long d : detail::divisors(n)) {
    const int mu = detail::moebius(d);
    if (mu == 1) num = detail::mul(num, detail::q_power_minus_one(n / d));
    if (mu == -1) denominators.push_back(n / d);
  }
  for (long m : denominators) {
    auto q = detail::divexact_schoolbook(num, detail::q_power_minus_one(m));
    if (!q) throw std::logic_error("cyclotomic_moebius: inexact division");
    num = std::move(*q);
  }
  return LaurentPoly::from_dense(num);
}

/// [n] = 1 + q + ... + q^{n-1}
inline LaurentPoly q_integer(long n) {
  if (n < 1) throw std::invalid_argument("q_integer: n must be positive");
  return LaurentPoly::from_dense(detail::ZPoly(static_cast<std::size_t>(n), mpz_class(1)));
}

inline LaurentPoly pochhammer(const PochSpec& spec) {
  if (spec.length < 0) throw std::invalid_argument("pochhammer: negative length");
  if (spec.step < 1) throw std::invalid_argument("pochhammer: step must be positive");
  Exponent shift = 0;
  detail::ZPoly cleared =
      detail::pochhammer_cleared(spec.coeff.get_num(), spec.coeff.get_den(), spec.base_exp, spec.step, spec.length, shift);
  Rat scale = 1;
  if (spec.coeff.get_den() != 1) {
    mpz_class den_power;
    mpz_pow_ui(den_power.get_mpz_t(), spec.coeff.get_den_mpz_t(), static_cast<unsigned long>(spec.length));
    scale = Rat(mpz_class(1), den_power);
  }
  return LaurentPoly::from_dense(cleared, shift, scale);
}

/// (q;q)_k
inline LaurentPoly q_factorial(Exponent k) { return pochhammer({1, 1, 1, k}); }

/// (q;q)_m / ((q;q)_k (q;q)_{m-k}), divided out one factor 1 - q^j at a time.
inline LaurentPoly gaussian_binomial(long m, long k) {
  if (k < 0 || m < 0 || k > m) throw std::invalid_argument("gaussian_binomial: need 0 <= k <= m");
  Exponent shift = 0;
  detail::ZPoly acc = detail::pochhammer_cleared(1, 1, 1, 1, m, shift);
  auto divide_run = [&acc](long upto) {
    for (long j = 1; j <= upto; ++j) {
      detail::ZPoly factor(static_cast<std::size_t>(j) + 1);
      factor[0] = 1;
      factor.back() = -1;
      auto q = detail::divexact_schoolbook(acc, factor);
      if (!q) throw NotDivisible("gaussian_binomial: inexact division");
      acc = std::move(*q);
    }
  };
  divide_run(k);
  divide_run(m - k);
  for (const auto& c : acc)
    if (sgn(c) < 0) throw std::logic_error("gaussian_binomial: negative coefficient");
  return LaurentPoly::from_dense(acc);
}

}  // namespace qcongr
