#pragma once

// Integer congruences for sums of central binomial coefficients modulo
// p and p^2, the q -> 1 shadows of the q-congruences.

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcongr/detail/modp.hpp"
#include "qcongr/poly_io.hpp"

namespace qcongr {

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned long kDefaultCap = 20000;

/// Summation-length cap: QCONGR_CAP if set, otherwise kDefaultCap.
inline unsigned long default_cap() {
  if (const char* env = std::getenv("QCONGR_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw std::invalid_argument(std::string("QCONGR_CAP must be a positive integer, got \"") + env + "\"");
  }
  return kDefaultCap;
}

enum class Corollary { st, c11, c12 };

inline std::string corollary_id(Corollary c) {
  switch (c) {
    case Corollary::st: return "st";
    case Corollary::c11: return "1.1";
    case Corollary::c12: return "1.2";
  }
  return "";
}

inline Corollary parse_corollary(const std::string& s) {
  if (s == "st") return Corollary::st;
  if (s == "1.1") return Corollary::c11;
  if (s == "1.2") return Corollary::c12;
  throw std::invalid_argument("unknown corollary \"" + s + "\" (expected 1.1, 1.2 or st)");
}

/// Base of the sign (-1)^{(b -+ 1)/2} in the corollaries. As printed it is p;
/// specializing the q-congruences at n = p^r gives p^r instead, and the two
/// differ when r is even and p = 3 mod 4.
enum class SignBase { prime, prime_power };

/// Modulus exponent: p for the background congruence, p^2 for the corollaries.
inline int corollary_power(Corollary c) { return c == Corollary::st ? 1 : 2; }

struct PadicResult {
  std::string check;
  unsigned long p = 0;
  unsigned long r = 0;
  bool pass = false;
  mpz_class modulus;
  mpz_class lhs;  // in [0, modulus)
  mpz_class rhs;
  std::string note;  // set when the sum is not p-integral
};

inline json to_json(const PadicResult& res) {
  json j{{"check", res.check}, {"p", res.p}, {"r", res.r}, {"status", res.pass ? "pass" : "fail"},
         {"lhs", res.lhs.get_str()}, {"rhs", res.rhs.get_str()}};
  if (!res.note.empty()) j["note"] = res.note;
  return j;
}

namespace detail {

inline mpz_class pow_ui(unsigned long base, unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

inline mpz_class mod_pos(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline unsigned long valuation(unsigned long x, unsigned long p) {
  unsigned long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// binom(2k, k) for k = 0, 1, ... via binom(2k+2, k+1) = binom(2k, k) 2(2k+1)/(k+1).
class CentralBinomials {
 public:
  const mpz_class& value() const { return b_; }
  void advance() {
    b_ *= 2 * (2 * k_ + 1);
    mpz_divexact_ui(b_.get_mpz_t(), b_.get_mpz_t(), k_ + 1);
    ++k_;
  }

 private:
  mpz_class b_ = 1;
  unsigned long k_ = 0;
};

inline void validate(unsigned long p, unsigned long r, unsigned long cap, mpz_class& length) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
  if (r < 1) throw std::invalid_argument("r must be a positive integer");
  length = pow_ui(p, r);
  if (length > cap)
    throw CapExceeded("p^r = " + length.get_str() + " exceeds the summation cap " + std::to_string(cap) +
                      " (raise it with --cap or QCONGR_CAP)");
}

// (-1)^{(b + offset)/2} for odd b
inline int sign_of(const mpz_class& b, long offset) {
  mpz_class half = (b + offset) / 2;
  return mpz_even_p(half.get_mpz_t()) ? 1 : -1;
}

inline mpz_class expected_rhs(Corollary which, unsigned long p, const mpz_class& length, const mpz_class& modulus,
                              SignBase base) {
  const mpz_class b = base == SignBase::prime ? mpz_class(p) : length;
  switch (which) {
    case Corollary::st: return mod_pos(mpz_class(sign_of(length, -1)), modulus);
    case Corollary::c11: return mod_pos(sign_of(b, -1) + 2 * length, modulus);
    case Corollary::c12: return mod_pos(sign_of(b, 1) + 2 * length, modulus);
  }
  return 0;
}

}  // namespace detail

/// Sum of the corollary's terms over 0 <= k < p^r as an exact rational.
inline mpq_class exact_sum(Corollary which, unsigned long length) {
  detail::CentralBinomials binom;
  mpq_class total = 0;
  mpz_class two_k = 1;
  for (unsigned long k = 0; k < length; ++k) {
    mpq_class term(binom.value(), two_k);
    if (which == Corollary::c11) term /= mpq_class(2 * static_cast<long>(k) - 1);
    if (which == Corollary::c12) term *= 2 * k + 1;
    term.canonicalize();
    total += term;
    binom.advance();
    two_k *= 2;
  }
  return total;
}

/// Reduces an exact rational modulo m; nullopt when its denominator is not a unit.
inline std::optional<mpz_class> reduce_rational(const mpq_class& x, const mpz_class& m) {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return detail::mod_pos(x.get_num() * inv, m);
}

/// Modular evaluation of one congruence. Terms of the 1.1 sum with p | 2k-1
/// are handled by scaling the whole sum by p^V, V the largest such valuation,
/// and working modulo p^{2+V}.
inline PadicResult check_corollary(Corollary which, unsigned long p, unsigned long r, unsigned long cap = default_cap(),
                                   SignBase base = SignBase::prime) {
  mpz_class length_z;
  detail::validate(p, r, cap, length_z);
  const unsigned long length = length_z.get_ui();
  const int e = corollary_power(which);
  const mpz_class modulus = detail::pow_ui(p, static_cast<unsigned long>(e));

  unsigned long V = 0;
  if (which == Corollary::c11)
    for (unsigned long k = 1; k < length; ++k) V = std::max(V, detail::valuation(2 * k - 1, p));
  const mpz_class scale = detail::pow_ui(p, V);
  const mpz_class work = modulus * scale;

  mpz_class inv2;
  mpz_class two(2);
  mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), work.get_mpz_t());

  detail::CentralBinomials binom;
  mpz_class inv2k = 1;  // 2^{-k} mod work
  mpz_class acc = 0;
  mpz_class term;
  for (unsigned long k = 0; k < length; ++k) {
    term = detail::mod_pos(binom.value(), work) * inv2k;
    if (which == Corollary::c12) term *= 2 * k + 1;
    if (which == Corollary::c11) {
      // p^V / (2k-1) = p^{V-v} / u with u a unit
      const long d = 2 * static_cast<long>(k) - 1;
      const unsigned long v = d < 0 ? 0 : detail::valuation(static_cast<unsigned long>(d), p);
      mpz_class u(d);
      if (v > 0) mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), detail::pow_ui(p, v).get_mpz_t());
      mpz_class u_inv;
      mpz_invert(u_inv.get_mpz_t(), detail::mod_pos(u, work).get_mpz_t(), work.get_mpz_t());
      term *= u_inv * detail::pow_ui(p, V - v);
    }
    acc = detail::mod_pos(acc + term, work);
    binom.advance();
    inv2k = detail::mod_pos(inv2k * inv2, work);
  }

  PadicResult res{"coro" + corollary_id(which), p, r, false, modulus, 0,
                  detail::expected_rhs(which, p, length_z, modulus, base), ""};
  if (which == Corollary::st) res.check = "st";
  if (!mpz_divisible_p(acc.get_mpz_t(), scale.get_mpz_t())) {
    res.note = "sum has p in its denominator";
    return res;
  }
  mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), scale.get_mpz_t());
  res.lhs = detail::mod_pos(acc, modulus);
  res.pass = res.lhs == res.rhs;
  return res;
}

inline PadicResult check_st(unsigned long p, unsigned long r, unsigned long cap = default_cap()) {
  return check_corollary(Corollary::st, p, r, cap);
}
inline PadicResult check_coro_1_1(unsigned long p, unsigned long r, unsigned long cap = default_cap()) {
  return check_corollary(Corollary::c11, p, r, cap);
}
inline PadicResult check_coro_1_2(unsigned long p, unsigned long r, unsigned long cap = default_cap()) {
  return check_corollary(Corollary::c12, p, r, cap);
}

/// Exact-rational route: the same congruence decided from exact_sum.
inline PadicResult check_corollary_exact(Corollary which, unsigned long p, unsigned long r, unsigned long cap = default_cap(),
                                         SignBase base = SignBase::prime) {
  mpz_class length;
  detail::validate(p, r, cap, length);
  const mpz_class modulus = detail::pow_ui(p, static_cast<unsigned long>(corollary_power(which)));
  PadicResult res{which == Corollary::st ? "st" : "coro" + corollary_id(which), p, r, false, modulus, 0,
                  detail::expected_rhs(which, p, length, modulus, base), ""};
  auto lhs = reduce_rational(exact_sum(which, length.get_ui()), modulus);
  if (!lhs) {
    res.note = "sum has p in its denominator";
    return res;
  }
  res.lhs = *lhs;
  res.pass = res.lhs == res.rhs;
  return res;
}

inline std::vector<unsigned long> odd_primes_upto(unsigned long bound) {
  std::vector<unsigned long> out;
  for (unsigned long p = 3; p <= bound; p += 2)
    if (detail::is_prime_u64(p)) out.push_back(p);
  return out;
}

}  // namespace qcongr
