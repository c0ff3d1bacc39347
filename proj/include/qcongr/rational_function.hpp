#pragma once

#include <stdexcept>
#include <utility>

#include "qcongr/laurent_poly.hpp"

namespace qcongr {

struct ZeroDenominator : std::domain_error {
  using std::domain_error::domain_error;
};

/// Reduced quotient num/den of Laurent polynomials.
///
/// Canonical form: den is an ordinary polynomial with nonzero constant
/// term and leading coefficient 1, every power of q lives in num, and
/// num (cleared of negative powers) is coprime to den. Two values are
/// equal iff their (num, den) pairs are equal.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(long c) : RationalFunction(LaurentPoly(c)) {}     // NOLINT(google-explicit-constructor)

  /// Reduces num/den to canonical form.
  static RationalFunction make(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw ZeroDenominator("RationalFunction: zero denominator");
    if (num.is_zero()) return {};
    detail::ScaledPoly n = detail::to_scaled(num);
    detail::ScaledPoly d = detail::to_scaled(den);
    detail::GcdCofactors g = detail::gcd_cofactors(n.prim, d.prim);
    return assemble(n.scale / d.scale, n.shift - d.shift, g.cofactor_a, g.cofactor_b);
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rat evaluate(const Rat& t) const { return num_.evaluate(t) / den_.evaluate(t); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return make(a.num_ + b.num_, a.den_);
    // Henrici: with g = gcd(d1, d2), d1 = g e1, d2 = g e2, the sum is
    // (n1 e2 + n2 e1) / (g e1 e2) and only gcd(numerator, g) can cancel.
    detail::ScaledPoly d1 = detail::to_scaled(a.den_);
    detail::ScaledPoly d2 = detail::to_scaled(b.den_);
    detail::GcdCofactors g = detail::gcd_cofactors(d1.prim, d2.prim);
    LaurentPoly numer = (Rat(1) / d1.scale) * (a.num_ * LaurentPoly::from_dense(g.cofactor_b)) +
                        (Rat(1) / d2.scale) * (b.num_ * LaurentPoly::from_dense(g.cofactor_a));
    if (numer.is_zero()) return {};
    detail::ScaledPoly n = detail::to_scaled(numer);
    detail::GcdCofactors h = detail::gcd_cofactors(n.prim, g.gcd);
    detail::ZPoly den = detail::mul(detail::mul(h.cofactor_b, g.cofactor_a), g.cofactor_b);
    return assemble(n.scale, n.shift, h.cofactor_a, den);
  }

  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    // Cross-cancellation keeps the product reduced without a gcd of the
    // full numerator against the full denominator.
    detail::ScaledPoly n1 = detail::to_scaled(a.num_);
    detail::ScaledPoly n2 = detail::to_scaled(b.num_);
    detail::ScaledPoly d1 = detail::to_scaled(a.den_);
    detail::ScaledPoly d2 = detail::to_scaled(b.den_);
    detail::GcdCofactors g1 = detail::gcd_cofactors(n1.prim, d2.prim);
    detail::GcdCofactors g2 = detail::gcd_cofactors(n2.prim, d1.prim);
    return assemble(n1.scale * n2.scale / (d1.scale * d2.scale), n1.shift + n2.shift,
                    detail::mul(g1.cofactor_a, g2.cofactor_a), detail::mul(g1.cofactor_b, g2.cofactor_b));
  }

  RationalFunction inverse() const {
    if (is_zero()) throw ZeroDenominator("RationalFunction: inverse of zero");
    return make(den_, num_);
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  // scale * q^shift * num / den with num, den coprime integer polynomials
  // and den(0) != 0; only the unit normalization remains.
  static RationalFunction assemble(const Rat& scale, Exponent shift, const detail::ZPoly& num,
                                   const detail::ZPoly& den) {
    RationalFunction r;
    const Rat lc(den.back());
    r.num_ = LaurentPoly::from_dense(num, shift, scale / lc);
    r.den_ = LaurentPoly::from_dense(den, 0, Rat(1) / lc);
    return r;
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace qcongr
