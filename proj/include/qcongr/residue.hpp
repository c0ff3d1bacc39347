#pragma once

// The quotient ring Q[q] / (Phi_n(q)^e).
//
// A residue is stored as an integer coefficient vector over a positive
// common denominator, reduced to degree < e * phi(n). Laurent inputs are
// folded in through the reduced representative of q^{-1}.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "qcongr/laurent_poly.hpp"
#include "qcongr/qobjects.hpp"

namespace qcongr {

struct NonInvertible : std::domain_error {
  using std::domain_error::domain_error;
};

struct ModulusMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Modulus;
using ModulusPtr = std::shared_ptr<const Modulus>;

namespace detail {

/// num / den with den > 0 and gcd(content(num), den) = 1.
struct RawResidue {
  ZPoly num;
  mpz_class den = 1;
};

inline void normalize(RawResidue& r) {
  trim(r.num);
  if (r.num.empty()) {
    r.den = 1;
    return;
  }
  if (sgn(r.den) < 0) {
    r.den = -r.den;
    for (auto& c : r.num) c = -c;
  }
  if (r.den == 1) return;
  mpz_class g = r.den;
  for (const auto& c : r.num) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  mpz_divexact(r.den.get_mpz_t(), r.den.get_mpz_t(), g.get_mpz_t());
  for (auto& c : r.num) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

}  // namespace detail

class Residue;

/// Phi_n(q)^e together with the data needed to reduce into it.
class Modulus : public std::enable_shared_from_this<Modulus> {
 public:
  long n() const { return n_; }
  int e() const { return e_; }
  /// Expanded Phi_n(q)^e.
  const LaurentPoly& poly() const { return poly_; }
  /// Reduced representative of q^{-1}.
  const LaurentPoly& q_inverse() const { return q_inverse_; }
  std::size_t degree() const { return modulus_.size() - 1; }
  const detail::RawResidue& q_inverse_raw() const { return q_inverse_raw_; }

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

  // Internal: integer long division against the monic modulus. Inputs of
  // high degree are first folded with the sparse multiple (q^n - 1)^e.
  void reduce_in_place(detail::ZPoly& c) const {
    detail::trim(c);
    const std::size_t cover_deg = cover_.size() - 1;
    if (c.size() > cover_deg) fold(c, cover_, cover_support_);
    if (c.size() > degree()) fold(c, modulus_, modulus_support_);
    detail::trim(c);
  }

  // Internal: cached inverse of 1 - q^k (k not divisible by n).
  detail::RawResidue one_minus_q_power_inverse(long k) const;

 private:
  friend ModulusPtr make_modulus(long n, int e);

  Modulus(long n, int e) : n_(n), e_(e) {}

  static void fold(detail::ZPoly& c, const detail::ZPoly& m, const std::vector<std::size_t>& support) {
    const std::size_t d = m.size() - 1;
    for (std::size_t i = c.size() - 1; i >= d; --i) {
      if (sgn(c[i]) != 0) {
        const std::size_t base = i - d;
        for (std::size_t j : support) mpz_submul(c[base + j].get_mpz_t(), c[i].get_mpz_t(), m[j].get_mpz_t());
        c[i] = 0;
      }
      if (i == d) break;
    }
    c.resize(d);
    detail::trim(c);
  }

  long n_;
  int e_;
  LaurentPoly poly_;
  LaurentPoly q_inverse_;
  detail::ZPoly modulus_;  // monic, ascending
  std::vector<std::size_t> modulus_support_;
  detail::ZPoly cover_;  // (q^n - 1)^e, a sparse multiple of the modulus
  std::vector<std::size_t> cover_support_;
  detail::RawResidue q_inverse_raw_;

  mutable std::mutex cache_mutex_;
  mutable std::map<long, detail::RawResidue> inverse_cache_;

  friend class Residue;
};

/// Element of Q[q] / (Phi_n^e). Immutable value; arithmetic requires
/// operands over the same (n, e).
class Residue {
 public:
  Residue(ModulusPtr m, detail::RawResidue raw) : modulus_(std::move(m)), raw_(std::move(raw)) {
    detail::normalize(raw_);
  }

  const Modulus& modulus() const { return *modulus_; }
  const ModulusPtr& modulus_ptr() const { return modulus_; }

  /// Canonical representative: ordinary polynomial of degree < e phi(n).
  LaurentPoly rep() const { return LaurentPoly::from_dense(raw_.num, 0, Rat(mpz_class(1), raw_.den)); }

  bool is_zero() const { return raw_.num.empty(); }
  bool is_one() const { return raw_.num.size() == 1 && raw_.num[0] == 1 && raw_.den == 1; }

  const detail::RawResidue& raw() const { return raw_; }

  friend Residue operator+(const Residue& a, const Residue& b) {
    check_same(a, b);
    detail::RawResidue r;
    r.den = a.raw_.den * b.raw_.den;
    r.num.resize(std::max(a.raw_.num.size(), b.raw_.num.size()));
    for (std::size_t i = 0; i < a.raw_.num.size(); ++i)
      mpz_addmul(r.num[i].get_mpz_t(), a.raw_.num[i].get_mpz_t(), b.raw_.den.get_mpz_t());
    for (std::size_t i = 0; i < b.raw_.num.size(); ++i)
      mpz_addmul(r.num[i].get_mpz_t(), b.raw_.num[i].get_mpz_t(), a.raw_.den.get_mpz_t());
    return Residue(a.modulus_, std::move(r));
  }

  Residue operator-() const {
    detail::RawResidue r = raw_;
    for (auto& c : r.num) c = -c;
    return Residue(modulus_, std::move(r));
  }

  friend Residue operator-(const Residue& a, const Residue& b) { return a + (-b); }

  friend Residue operator*(const Residue& a, const Residue& b) {
    check_same(a, b);
    detail::RawResidue r{detail::mul(a.raw_.num, b.raw_.num), a.raw_.den * b.raw_.den};
    a.modulus_->reduce_in_place(r.num);
    return Residue(a.modulus_, std::move(r));
  }

  /// Product with an ordinary polynomial given by integer coefficients
  /// q^shift * coeffs, cheaper than a full product when coeffs is sparse.
  Residue times_sparse(const detail::ZPoly& coeffs, std::size_t shift = 0) const {
    detail::ZPoly prod(raw_.num.size() + coeffs.size() + shift);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (sgn(coeffs[j]) == 0) continue;
      for (std::size_t i = 0; i < raw_.num.size(); ++i)
        mpz_addmul(prod[i + j + shift].get_mpz_t(), raw_.num[i].get_mpz_t(), coeffs[j].get_mpz_t());
    }
    modulus_->reduce_in_place(prod);
    return Residue(modulus_, {std::move(prod), raw_.den});
  }

  Residue& operator+=(const Residue& b) { return *this = *this + b; }
  Residue& operator*=(const Residue& b) { return *this = *this * b; }

  /// Multiplicative inverse; throws NonInvertible when gcd(rep, Phi_n^e) != 1.
  Residue inverse() const;

  friend bool operator==(const Residue& a, const Residue& b) {
    return *a.modulus_ == *b.modulus_ && a.raw_.num == b.raw_.num && a.raw_.den == b.raw_.den;
  }

 private:
  static void check_same(const Residue& a, const Residue& b) {
    if (!(*a.modulus_ == *b.modulus_)) throw ModulusMismatch("residue operands live in different quotient rings");
  }

  ModulusPtr modulus_;
  detail::RawResidue raw_;
};

namespace detail {

/// Inverse of num modulo the monic integer polynomial m, assuming
/// gcd(num, m) = 1 over Q. Images mod word primes are lifted by CRT and
/// rational reconstruction; a candidate is accepted only after an exact
/// check num * candidate == 1 mod m.
inline RawResidue inverse_multimodular(const ZPoly& num, const Modulus& m, const ZPoly& modulus) {
  ZPoly image;
  mpz_class prime_product = 1;
  std::size_t used = 0;
  std::size_t next_attempt = 2;
  for (std::size_t i = 0;; ++i) {
    const u64 p = prime_at(i);
    PolyP inv = inverse_mod(reduce_mod(num, p), reduce_mod(modulus, p), p);
    if (inv.empty()) continue;  // p divides the resultant
    crt_combine(image, prime_product, inv, p);
    prime_product *= p;
    ++used;
    // Reconstruction is attempted on a geometric schedule of prime counts.
    if (used < next_attempt) continue;
    next_attempt = used + used / 4 + 1;
    RawResidue candidate;
    candidate.num.resize(image.size());
    std::vector<mpq_class> coeffs(image.size());
    bool ok = true;
    for (std::size_t j = 0; j < image.size() && ok; ++j) {
      auto rr = rational_reconstruct(image[j], prime_product);
      if (!rr) ok = false;
      else {
        coeffs[j] = *rr;
        mpz_lcm(candidate.den.get_mpz_t(), candidate.den.get_mpz_t(), rr->get_den_mpz_t());
      }
    }
    if (!ok) continue;
    for (std::size_t j = 0; j < image.size(); ++j) {
      mpz_class scaled = candidate.den / coeffs[j].get_den();
      candidate.num[j] = coeffs[j].get_num() * scaled;
    }
    ZPoly check = mul(num, candidate.num);
    m.reduce_in_place(check);
    if (check.size() == 1 && check[0] == candidate.den) return candidate;
    if (i > (1U << 14)) throw std::runtime_error("inverse: prime budget exhausted");
  }
}

/// Reference inverse by the extended Euclidean algorithm over exact
/// rationals. Quadratic growth in coefficient size; intended for
/// small moduli and as a cross-check.
inline LaurentPoly inverse_by_rational_euclid(const LaurentPoly& a, const LaurentPoly& m) {
  auto divrem_q = [](LaurentPoly x, const LaurentPoly& y, LaurentPoly& quot) {
    quot = LaurentPoly();
    const Exponent dy = y.max_exp();
    const Rat& ly = y.leading();
    while (!x.is_zero() && x.max_exp() >= dy) {
      LaurentPoly t = LaurentPoly::monomial(x.leading() / ly, x.max_exp() - dy);
      quot += t;
      x -= t * y;
    }
    return x;
  };
  LaurentPoly r0 = m;
  LaurentPoly r1 = a;
  LaurentPoly s0;
  LaurentPoly s1(1);
  LaurentPoly quot;
  r1 = divrem_q(r1, m, quot);
  while (!r1.is_zero() && r1.max_exp() > 0) {
    LaurentPoly r2 = divrem_q(r0, r1, quot);
    LaurentPoly s2 = s0 - quot * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.is_zero()) throw NonInvertible("inverse: element shares a factor with the modulus");
  LaurentPoly inv = (Rat(1) / r1.leading()) * s1;
  return divrem_q(inv, m, quot);
}

}  // namespace detail

inline Residue Residue::inverse() const {
  if (is_zero()) throw NonInvertible("inverse: zero residue");
  const Modulus& m = *modulus_;
  // Exact invertibility test first: the multimodular gcd is proven.
  if (detail::gcd(raw_.num, m.modulus_).size() > 1)
    throw NonInvertible("inverse: element shares a factor with Phi_n^e");
  detail::RawResidue inv = detail::inverse_multimodular(raw_.num, m, m.modulus_);
  // (num/den)^{-1} = den * num^{-1}
  for (auto& c : inv.num) c *= raw_.den;
  return Residue(modulus_, std::move(inv));
}

inline detail::RawResidue Modulus::one_minus_q_power_inverse(long k) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = inverse_cache_.find(k);
    if (it != inverse_cache_.end()) return it->second;
  }
  detail::ZPoly c(static_cast<std::size_t>(k) + 1);
  c[0] = 1;
  c.back() = -1;
  reduce_in_place(c);
  Residue value(shared_from_this(), {c, 1});
  detail::RawResidue inv = value.inverse().raw();
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return inverse_cache_.try_emplace(k, std::move(inv)).first->second;
}

/// Reduces a Laurent polynomial into the quotient ring.
inline Residue reduce(const ModulusPtr& m, const LaurentPoly& p) {
  if (p.is_zero()) return Residue(m, {});
  detail::ScaledPoly s = detail::to_scaled(p);
  detail::RawResidue r;
  r.den = s.scale.get_den();
  detail::ZPoly coeffs = std::move(s.prim);
  for (auto& c : coeffs) c *= s.scale.get_num();
  Exponent shift = s.shift;
  if (shift > 0) coeffs.insert(coeffs.begin(), static_cast<std::size_t>(shift), mpz_class(0));
  m->reduce_in_place(coeffs);
  r.num = std::move(coeffs);
  Residue out(m, std::move(r));
  if (shift < 0) {
    // Fold negative powers: multiply by (q^{-1})^{|shift|}.
    Residue base(m, m->q_inverse_raw());
    Residue acc(m, {detail::ZPoly{mpz_class(1)}, 1});
    for (unsigned long k = static_cast<unsigned long>(-shift); k != 0; k >>= 1U) {
      if (k & 1U) acc = acc * base;
      if (k > 1) base = base * base;
    }
    out = out * acc;
  }
  return out;
}

inline ModulusPtr make_modulus(long n, int e) {
  if (n < 2) throw std::invalid_argument("make_modulus: n must be at least 2");
  if (e < 1) throw std::invalid_argument("make_modulus: e must be positive");
  std::shared_ptr<Modulus> m(new Modulus(n, e));
  LaurentPoly phi = cyclotomic(n);
  m->poly_ = pow(phi, static_cast<unsigned long>(e));
  m->modulus_ = detail::to_scaled(m->poly_).prim;
  for (std::size_t j = 0; j + 1 < m->modulus_.size(); ++j)
    if (sgn(m->modulus_[j]) != 0) m->modulus_support_.push_back(j);
  detail::ZPoly cover{1};
  for (int i = 0; i < e; ++i) cover = detail::mul(cover, detail::q_power_minus_one(n));
  m->cover_ = std::move(cover);
  for (std::size_t j = 0; j + 1 < m->cover_.size(); ++j)
    if (sgn(m->cover_[j]) != 0) m->cover_support_.push_back(j);
  // q is a unit because Phi_n(0) = 1 for n >= 2.
  detail::ZPoly q_coeffs{0, 1};
  m->reduce_in_place(q_coeffs);
  Residue q_res(m, {q_coeffs, 1});
  Residue q_inv = q_res.inverse();
  m->q_inverse_raw_ = q_inv.raw();
  m->q_inverse_ = q_inv.rep();
  return m;
}

/// q^k in the quotient ring, for any signed k.
inline Residue q_power(const ModulusPtr& m, Exponent k) { return reduce(m, LaurentPoly::q(k)); }

}  // namespace qcongr
