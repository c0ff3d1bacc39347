#pragma once

// Word-size prime field arithmetic used by the multi-modular routines.
// All primes are below 2^62 so that Shoup multiplication stays exact.

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qcongr::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

inline u64 add_mod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 pow_mod(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1U;
  }
  return result;
}

// p must be prime and a nonzero mod p.
inline u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

/// Multiplier with a precomputed quotient approximation (Shoup).
/// Multiplying many values by the same w costs two word products each.
struct ShoupMul {
  u64 w;
  u64 w_pre;
  u64 p;

  ShoupMul(u64 w_, u64 p_) : w(w_), w_pre(static_cast<u64>((static_cast<u128>(w_) << 64) / p_)), p(p_) {}

  u64 operator()(u64 a) const {
    u64 q = static_cast<u64>((static_cast<u128>(w_pre) * a) >> 64);
    u64 r = w * a - q * p;
    return r >= p ? r - p : r;
  }
};

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // This witness set is deterministic for all 64-bit inputs.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The i-th prime in descending order below 2^62. Generated on demand;
/// safe to call from several threads.
inline u64 prime_at(std::size_t i) {
  static std::mutex mutex;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mutex);
  if (i > (1U << 20)) throw std::length_error("prime_at: index too large");
  u64 candidate = primes.empty() ? (1ULL << 62) - 1 : primes.back() - 2;
  while (primes.size() <= i) {
    while (!is_prime_u64(candidate)) candidate -= 2;
    primes.push_back(candidate);
    candidate -= 2;
  }
  return primes[i];
}

/// Dense polynomials over F_p, ascending coefficients, no trailing zeros.
using PolyP = std::vector<u64>;

inline void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline void make_monic(PolyP& a, u64 p) {
  if (a.empty() || a.back() == 1) return;
  ShoupMul scale(inv_mod(a.back(), p), p);
  for (auto& c : a) c = scale(c);
}

// In-place remainder of a modulo monic b; writes the quotient if requested.
inline void rem_monic(PolyP& a, const PolyP& b, u64 p, PolyP* quotient = nullptr) {
  const std::size_t db = b.size() - 1;
  if (quotient != nullptr) quotient->assign(a.size() > db ? a.size() - db : 0, 0);
  if (a.size() <= db) return;
  for (std::size_t i = a.size() - 1; i >= db; --i) {
    u64 c = a[i];
    if (c != 0) {
      const std::size_t base = i - db;
      if (quotient != nullptr) (*quotient)[base] = c;
      ShoupMul m(c, p);
      for (std::size_t j = 0; j < db; ++j) {
        if (b[j] != 0) a[base + j] = sub_mod(a[base + j], m(b[j]), p);
      }
      a[i] = 0;
    }
    if (i == db) break;
  }
  trim(a);
}

// Division by a general (not necessarily monic) b with invertible leading coefficient.
inline void divrem(const PolyP& a, const PolyP& b, u64 p, PolyP& quotient, PolyP& remainder) {
  PolyP bm = b;
  u64 lc_inv = inv_mod(b.back(), p);
  make_monic(bm, p);
  remainder = a;
  rem_monic(remainder, bm, p, &quotient);
  ShoupMul scale(lc_inv, p);
  for (auto& c : quotient) c = scale(c);
  trim(quotient);
}

inline PolyP gcd_monic(PolyP a, PolyP b, u64 p) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    make_monic(b, p);
    rem_monic(a, b, p);
    std::swap(a, b);
  }
  make_monic(a, p);
  return a;
}

inline PolyP mul(const PolyP& a, const PolyP& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    ShoupMul m(a[i], p);
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add_mod(r[i + j], m(b[j]), p);
  }
  trim(r);
  return r;
}

/// Inverse of a modulo m over F_p, or an empty vector when gcd(a, m) != 1 mod p.
inline PolyP inverse_mod(const PolyP& a, const PolyP& m, u64 p) {
  PolyP r0 = m;
  PolyP r1 = a;
  trim(r1);
  if (r1.size() >= r0.size()) {
    PolyP mm = m;
    make_monic(mm, p);
    rem_monic(r1, mm, p);
  }
  PolyP s0;
  PolyP s1{1};
  while (r1.size() > 1) {
    PolyP q;
    PolyP r;
    divrem(r0, r1, p, q, r);
    PolyP qs = mul(q, s1, p);
    PolyP s2(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = sub_mod(s2[i], qs[i], p);
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) return {};
  ShoupMul scale(inv_mod(r1[0], p), p);
  for (auto& c : s1) c = scale(c);
  return s1;
}

}  // namespace qcongr::detail
