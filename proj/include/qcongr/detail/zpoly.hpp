#pragma once

// Dense integer polynomials and the multi-modular algorithms behind
// gcd, exact division and residue inversion. Coefficients ascend:
// index i holds the coefficient of q^i.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcongr/detail/modp.hpp"

namespace qcongr::detail {

using ZPoly = std::vector<mpz_class>;

inline void trim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline long degree(const ZPoly& a) { return static_cast<long>(a.size()) - 1; }

inline bool is_zero(const ZPoly& a) { return a.empty(); }

inline mpz_class content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Divides out the content and makes the leading coefficient positive.
inline ZPoly primitive_part(ZPoly a) {
  trim(a);
  if (a.empty()) return a;
  mpz_class c = content(a);
  if (sgn(a.back()) < 0) c = -c;
  if (c != 1) {
    for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  return a;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  trim(r);
  return r;
}

inline std::size_t nonzero_count(const ZPoly& a) {
  return static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [](const mpz_class& c) { return sgn(c) != 0; }));
}

/// Schoolbook exact division over Z, iterating only over the nonzero
/// entries of the divisor. nullopt when b does not divide a.
inline std::optional<ZPoly> divexact_schoolbook(ZPoly a, const ZPoly& b) {
  if (b.empty()) throw std::domain_error("divexact: division by zero polynomial");
  trim(a);
  if (a.empty()) return ZPoly{};
  if (a.size() < b.size()) return std::nullopt;
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j + 1 < b.size(); ++j)
    if (sgn(b[j]) != 0) support.push_back(j);
  const std::size_t db = b.size() - 1;
  ZPoly quot(a.size() - db);
  const mpz_class& lc = b.back();
  const int unit_lc = lc == 1 ? 1 : (lc == -1 ? -1 : 0);
  mpz_class c;
  for (std::size_t i = a.size() - 1;; --i) {
    if (sgn(a[i]) != 0) {
      if (unit_lc == 1) {
        c = a[i];
      } else if (unit_lc == -1) {
        mpz_neg(c.get_mpz_t(), a[i].get_mpz_t());
      } else {
        if (!mpz_divisible_p(a[i].get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
        mpz_divexact(c.get_mpz_t(), a[i].get_mpz_t(), lc.get_mpz_t());
      }
      const std::size_t base = i - db;
      for (std::size_t j : support) mpz_submul(a[base + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
      quot[base] = c;
      a[i] = 0;
    }
    if (i == db) break;
  }
  for (std::size_t i = 0; i < db; ++i)
    if (sgn(a[i]) != 0) return std::nullopt;
  trim(quot);
  return quot;
}

inline PolyP reduce_mod(const ZPoly& a, u64 p) {
  PolyP r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  trim(r);
  return r;
}

// Combines x (mod modulus, symmetric) with xp (mod p) into a symmetric
// representative mod modulus*p. Returns whether any coefficient changed.
inline bool crt_combine(ZPoly& x, const mpz_class& modulus, const PolyP& xp, u64 p) {
  const std::size_t len = std::max(x.size(), xp.size());
  x.resize(len);
  const u64 m_inv = inv_mod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
  mpz_class combined_mod = modulus * p;
  mpz_class half = combined_mod / 2;
  bool changed = false;
  for (std::size_t i = 0; i < len; ++i) {
    u64 target = i < xp.size() ? xp[i] : 0;
    u64 current = mpz_fdiv_ui(x[i].get_mpz_t(), p);
    if (current == target) continue;
    u64 t = mul_mod(sub_mod(target, current, p), m_inv, p);
    mpz_addmul_ui(x[i].get_mpz_t(), modulus.get_mpz_t(), static_cast<unsigned long>(t));
    if (x[i] > half) x[i] -= combined_mod;
    changed = true;
  }
  trim(x);
  return changed;
}

inline mpz_class norm_inf(const ZPoly& a) {
  mpz_class m = 0;
  for (const auto& c : a)
    if (mpz_cmpabs(c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(c);
  return m;
}

inline mpz_class norm_one(const ZPoly& a) {
  mpz_class s = 0;
  for (const auto& c : a) s += abs(c);
  return s;
}

/// Exact quotient a / b over Z computed prime by prime. The result is
/// proven: once the accumulated prime product exceeds
/// 2(|b|_1 |q|_inf + |a|_inf), q*b - a vanishes modulo that product while
/// its coefficients are smaller than half of it.
inline std::optional<ZPoly> divexact_modular(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw std::domain_error("divexact: division by zero polynomial");
  if (a.empty()) return ZPoly{};
  if (a.size() < b.size()) return std::nullopt;
  const mpz_class& lc_b = b.back();
  if (!mpz_divisible_p(a.back().get_mpz_t(), lc_b.get_mpz_t())) return std::nullopt;
  const mpz_class a_norm = norm_inf(a);
  const mpz_class b_norm1 = norm_one(b);
  ZPoly quot;
  mpz_class modulus = 1;
  for (std::size_t i = 0;; ++i) {
    const u64 p = prime_at(i);
    if (mpz_fdiv_ui(lc_b.get_mpz_t(), p) == 0) continue;
    PolyP qp;
    PolyP rp;
    divrem(reduce_mod(a, p), reduce_mod(b, p), p, qp, rp);
    if (!rp.empty()) return std::nullopt;
    crt_combine(quot, modulus, qp, p);
    modulus *= p;
    mpz_class bound = 2 * (b_norm1 * norm_inf(quot) + a_norm);
    if (modulus > bound) return quot;
    if (i > (1U << 16)) throw std::runtime_error("divexact_modular: prime budget exhausted");
  }
}

inline std::optional<ZPoly> divexact(const ZPoly& a, const ZPoly& b) {
  if (nonzero_count(b) <= 8 || a.size() < 64) return divexact_schoolbook(a, b);
  return divexact_modular(a, b);
}

struct GcdCofactors {
  ZPoly gcd;       // primitive, positive leading coefficient
  ZPoly cofactor_a;  // a / gcd
  ZPoly cofactor_b;  // b / gcd
};

/// Multi-modular (Brown) gcd over Z with exact cofactors.
/// At least one input must be nonzero.
inline GcdCofactors gcd_cofactors(const ZPoly& a_in, const ZPoly& b_in) {
  ZPoly a = a_in;
  ZPoly b = b_in;
  trim(a);
  trim(b);
  if (a.empty() && b.empty()) throw std::invalid_argument("gcd: both arguments are zero");
  if (a.empty() || b.empty()) {
    const ZPoly& nz = a.empty() ? b : a;
    ZPoly g = primitive_part(nz);
    mpz_class unit = nz.back() / g.back();
    GcdCofactors out{g, {}, {}};
    (a.empty() ? out.cofactor_b : out.cofactor_a) = ZPoly{unit};
    return out;
  }
  const mpz_class ca = content(a);
  const mpz_class cb = content(b);
  auto scaled = [](const ZPoly& x, const mpz_class& c) {
    ZPoly r = x;
    for (auto& v : r) v *= c;
    return r;
  };
  if (a.size() == 1 || b.size() == 1) {
    ZPoly ra = a;
    ZPoly rb = b;
    return {ZPoly{1}, ra, rb};
  }
  ZPoly pa = a;
  ZPoly pb = b;
  for (auto& v : pa) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), ca.get_mpz_t());
  for (auto& v : pb) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), cb.get_mpz_t());

  const mpz_class lc_gcd = gcd(pa.back(), pb.back());
  long best_degree = std::min(degree(pa), degree(pb)) + 1;
  ZPoly h;
  mpz_class modulus = 1;
  for (std::size_t i = 0;; ++i) {
    const u64 p = prime_at(i);
    if (mpz_fdiv_ui(pa.back().get_mpz_t(), p) == 0 || mpz_fdiv_ui(pb.back().get_mpz_t(), p) == 0) continue;
    PolyP gp = gcd_monic(reduce_mod(pa, p), reduce_mod(pb, p), p);
    const long d = static_cast<long>(gp.size()) - 1;
    if (d == 0) return {ZPoly{1}, a, b};
    if (d > best_degree) continue;
    ShoupMul lift(mpz_fdiv_ui(lc_gcd.get_mpz_t(), p), p);
    for (auto& c : gp) c = lift(c);
    if (d < best_degree) {
      best_degree = d;
      h.clear();
      modulus = 1;
      crt_combine(h, modulus, gp, p);
      modulus = p;
      continue;
    }
    const bool changed = crt_combine(h, modulus, gp, p);
    modulus *= p;
    if (changed) continue;
    ZPoly g = primitive_part(h);
    auto qa = divexact_modular(pa, g);
    if (!qa) continue;
    auto qb = divexact_modular(pb, g);
    if (!qb) continue;
    return {g, scaled(*qa, ca), scaled(*qb, cb)};
  }
}

inline ZPoly gcd(const ZPoly& a, const ZPoly& b) { return gcd_cofactors(a, b).gcd; }

/// Rational reconstruction of u modulo m with |num|, den <= sqrt(m/2).
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& u, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m;
  mpz_class r1 = u % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0;
  mpz_class t1 = 1;
  mpz_class q;
  mpz_class tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (mpz_cmpabs(t1.get_mpz_t(), bound.get_mpz_t()) > 0 || sgn(t1) == 0) return std::nullopt;
  if (gcd(r1, t1) != 1) return std::nullopt;
  mpq_class out(r1, t1);
  out.canonicalize();
  return out;
}

}  // namespace qcongr::detail
