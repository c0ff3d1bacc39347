#include <gtest/gtest.h>

#include "generators.hpp"
#include "qcongr/residue.hpp"

using namespace qcongr;
using qcongr::testing::Gen;

namespace {

const LaurentPoly q = LaurentPoly::q(1);
const LaurentPoly one(1);

Residue res(const ModulusPtr& m, const LaurentPoly& p) { return reduce(m, p); }

}  // namespace

TEST(Modulus, Examples) {
  auto m31 = make_modulus(3, 1);
  EXPECT_EQ(m31->poly(), one + q + LaurentPoly::q(2));
  EXPECT_EQ(m31->q_inverse(), -one - q);
  auto m21 = make_modulus(2, 1);
  EXPECT_EQ(m21->poly(), q + one);
  EXPECT_EQ(m21->q_inverse(), -one);
  auto m32 = make_modulus(3, 2);
  EXPECT_EQ(m32->poly(), pow(one + q + LaurentPoly::q(2), 2));
  EXPECT_EQ(m32->degree(), 4U);
  EXPECT_THROW(make_modulus(1, 1), std::invalid_argument);
  EXPECT_THROW(make_modulus(5, 0), std::invalid_argument);
}

TEST(Residue, ReduceExamples) {
  auto m31 = make_modulus(3, 1);
  EXPECT_TRUE(res(m31, LaurentPoly::q(3)).is_one());
  EXPECT_EQ(res(m31, LaurentPoly::q(-1)).rep(), -one - q);
  auto m32 = make_modulus(3, 2);
  EXPECT_FALSE(res(m32, LaurentPoly::q(3)).is_one());
  EXPECT_EQ(res(m32, LaurentPoly::q(3)).rep(), LaurentPoly::q(3));
}

TEST(Residue, ArithmeticExamples) {
  auto m = make_modulus(3, 1);
  const Residue a = res(m, Rat(5, 3) * q - LaurentPoly::q(7));
  EXPECT_TRUE((a + (-a)).is_zero());
  EXPECT_TRUE((res(m, q) * res(m, LaurentPoly::q(2))).is_one());
  EXPECT_THROW(res(m, q) + res(make_modulus(3, 2), q), ModulusMismatch);
}

TEST(Residue, InverseExamples) {
  auto m = make_modulus(3, 1);
  EXPECT_TRUE(res(m, one).inverse().is_one());
  EXPECT_THROW(res(m, one - LaurentPoly::q(3)).inverse(), NonInvertible);
  EXPECT_THROW(Residue(m, {}).inverse(), NonInvertible);
}

TEST(Residue, QPowerExamples) {
  auto m31 = make_modulus(3, 1);
  EXPECT_TRUE(q_power(m31, 0).is_one());
  EXPECT_TRUE(q_power(make_modulus(5, 1), 5).is_one());
  EXPECT_EQ(q_power(m31, -2), res(m31, q));
}

TEST(Residue, CanonicalRepresentativeHasLowDegree) {
  Gen g(0x5eed0101);
  for (long n : {3L, 5L, 9L, 15L}) {
    for (int e : {1, 2}) {
      auto m = make_modulus(n, e);
      for (int i = 0; i < 50; ++i) {
        const LaurentPoly p = g.laurent(8, -40, 60);
        const Residue r = res(m, p);
        if (!r.is_zero()) {
          ASSERT_GE(r.rep().min_exp(), 0);
          ASSERT_LT(static_cast<std::size_t>(r.rep().max_exp()), m->degree());
        }
        // p - rep is a multiple of the modulus, up to a power of q
        const LaurentPoly diff = (p - r.rep()) * LaurentPoly::q(40);
        ASSERT_NO_THROW(divexact(diff, m->poly()));
      }
    }
  }
}

TEST(Residue, ReduceIsARingHomomorphism) {
  Gen g(0x5eed0102);
  for (long n : {3L, 5L, 9L, 15L}) {
    for (int e : {1, 2}) {
      auto m = make_modulus(n, e);
      for (int i = 0; i < 130; ++i) {
        const LaurentPoly a = g.laurent();
        const LaurentPoly b = g.laurent();
        ASSERT_EQ(res(m, a + b), res(m, a) + res(m, b));
        ASSERT_EQ(res(m, a * b), res(m, a) * res(m, b));
        ASSERT_EQ(res(m, -a), -res(m, a));
      }
    }
  }
}

TEST(Residue, InverseTimesSelfIsOne) {
  Gen g(0x5eed0103);
  for (long n : {3L, 5L, 7L, 9L, 15L, 21L}) {
    for (int e : {1, 2}) {
      auto m = make_modulus(n, e);
      for (int i = 0; i < 40; ++i) {
        const Residue a = res(m, g.laurent(6, -10, 30));
        try {
          const Residue inv = a.inverse();
          ASSERT_TRUE((a * inv).is_one());
        } catch (const NonInvertible&) {
          // gcd test failed: a and Phi_n^e share the factor Phi_n
          ASSERT_TRUE(a.is_zero() || !gcd(a.rep(), cyclotomic(n)).is_constant());
        }
      }
    }
  }
}

TEST(Residue, OneMinusQPowerInvertibleIffNotMultipleOfN) {
  for (long n : {3L, 5L, 7L, 9L}) {
    for (int e : {1, 2}) {
      auto m = make_modulus(n, e);
      for (long j = 1; j <= 3 * n; ++j) {
        const Residue x = res(m, one - LaurentPoly::q(j));
        if (j % n == 0) {
          EXPECT_THROW(x.inverse(), NonInvertible) << n << " " << e << " " << j;
        } else {
          EXPECT_TRUE((x * x.inverse()).is_one()) << n << " " << e << " " << j;
        }
      }
    }
  }
}

TEST(Residue, MultimodularInverseMatchesRationalEuclid) {
  Gen g(0x5eed0104);
  for (long n : {3L, 5L, 7L, 11L, 15L}) {
    for (int e : {1, 2}) {
      auto m = make_modulus(n, e);
      for (int i = 0; i < 15; ++i) {
        const Residue a = res(m, g.small_poly(12) * Rat(g.integer(1, 9), g.integer(1, 9)));
        if (!gcd(a.rep(), cyclotomic(n)).is_constant()) continue;
        const LaurentPoly oracle = detail::inverse_by_rational_euclid(a.rep(), m->poly());
        ASSERT_EQ(a.inverse().rep(), oracle);
      }
      // a unit of Phi_n^e with large coefficients
      const Residue f = res(m, q_factorial(n - 1));
      ASSERT_EQ(f.inverse().rep(), detail::inverse_by_rational_euclid(f.rep(), m->poly()));
    }
  }
}

TEST(Residue, QFactorialUnitBelowN) {
  for (long n : {5L, 13L, 31L}) {
    auto m = make_modulus(n, 2);
    for (long k = 0; k < n; ++k) ASSERT_TRUE((res(m, q_factorial(k)) * res(m, q_factorial(k)).inverse()).is_one());
    EXPECT_THROW(res(m, q_factorial(n)).inverse(), NonInvertible);
  }
}

TEST(Residue, ExponentInvarianceModPhi) {
  // q^{(n^2-9)/4} = q^{-(n-3)^2/4} modulo Phi_n
  for (long n = 3; n <= 99; n += 2) {
    auto m = make_modulus(n, 1);
    ASSERT_EQ(q_power(m, (n * n - 9) / 4), q_power(m, -(n - 3) * (n - 3) / 4)) << n;
  }
}

TEST(Residue, QPowerFollowsPeriodOnlyModPhi) {
  for (long n : {5L, 9L, 15L}) {
    auto m1 = make_modulus(n, 1);
    auto m2 = make_modulus(n, 2);
    for (Exponent k = -2 * n; k <= 2 * n; ++k) {
      ASSERT_EQ(q_power(m1, k), q_power(m1, k + n));
      ASSERT_NE(q_power(m2, k), q_power(m2, k + n));
      ASSERT_TRUE((q_power(m2, k) * q_power(m2, -k)).is_one());
    }
  }
}
