#include <gtest/gtest.h>

#include "qcongr/poly_io.hpp"
#include "qcongr/qobjects.hpp"

using namespace qcongr;

namespace {

const LaurentPoly q = LaurentPoly::q(1);
const LaurentPoly one(1);

LaurentPoly one_minus_q_pow(Exponent e) { return one - LaurentPoly::q(e); }

}  // namespace

TEST(Cyclotomic, SmallCases) {
  EXPECT_EQ(cyclotomic(1), q - one);
  EXPECT_EQ(cyclotomic(2), q + one);
  EXPECT_EQ(cyclotomic(3), one + q + LaurentPoly::q(2));
  EXPECT_EQ(cyclotomic(6), LaurentPoly::q(2) - q + one);
  EXPECT_THROW(cyclotomic(0), std::invalid_argument);
}

TEST(Cyclotomic, Phi105HasCoefficientMinusTwo) {
  const LaurentPoly phi = cyclotomic(105);
  EXPECT_EQ(phi.max_exp(), 48);
  EXPECT_EQ(phi.coeff(7), Rat(-2));
  EXPECT_EQ(phi.coeff(41), Rat(-2));
  for (long n = 1; n < 105; ++n) {
    const LaurentPoly small = cyclotomic(n);
    for (const auto& [e, c] : small.terms()) ASSERT_LE(abs(c), Rat(1)) << "n=" << n;
  }
}

TEST(Cyclotomic, RecursiveDivisionMatchesMoebiusProduct) {
  for (long n = 1; n <= 300; ++n) ASSERT_EQ(cyclotomic(n), cyclotomic_moebius(n)) << "n=" << n;
}

TEST(Cyclotomic, ProductOverDivisorsIsQnMinusOne) {
  for (long n = 1; n <= 300; ++n) {
    LaurentPoly prod(1);
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) prod *= cyclotomic(d);
    ASSERT_EQ(prod, LaurentPoly::q(n) - one) << "n=" << n;
  }
}

TEST(QInteger, Examples) {
  EXPECT_EQ(q_integer(1), one);
  EXPECT_EQ(q_integer(3), one + q + LaurentPoly::q(2));
  EXPECT_EQ(q_integer(2), one + q);
  EXPECT_NE(q_integer(2) * q_integer(3), q_integer(6));
  EXPECT_EQ(to_text(q_integer(7)), "1 + q + q^2 + q^3 + q^4 + q^5 + q^6");
}

TEST(Pochhammer, Examples) {
  EXPECT_EQ(pochhammer({1, 1, 2, 2}), (one - q) * one_minus_q_pow(3));
  EXPECT_EQ(pochhammer({1, -1, 2, 1}), one - LaurentPoly::q(-1));
  EXPECT_EQ(pochhammer({-1, 1, 1, 3}), (one + q) * (one + LaurentPoly::q(2)) * (one + LaurentPoly::q(3)));
  EXPECT_EQ(pochhammer({5, 2, 3, 0}), one);
  // rational coefficient: (q/2; q)_2 = (1 - q/2)(1 - q^2/2)
  EXPECT_EQ(pochhammer({Rat(1, 2), 1, 1, 2}), (one - Rat(1, 2) * q) * (one - Rat(1, 2) * LaurentPoly::q(2)));
  EXPECT_THROW(pochhammer({1, 1, 1, -1}), std::invalid_argument);
}

TEST(Pochhammer, MatchesFactorByFactorProduct) {
  for (Exponent a : {-5, -1, 0, 1, 3}) {
    for (Exponent s : {1, 2, 3}) {
      LaurentPoly expected(1);
      for (Exponent k = 0; k <= 12; ++k) {
        ASSERT_EQ(pochhammer({1, a, s, k}), expected) << a << " " << s << " " << k;
        expected *= one_minus_q_pow(a + k * s);
      }
    }
  }
}

TEST(Pochhammer, QFactorialDegreeAndConstantTerm) {
  for (Exponent n = 0; n <= 40; ++n) {
    const LaurentPoly f = q_factorial(n);
    EXPECT_EQ(f.max_exp(), n * (n + 1) / 2);
    EXPECT_EQ(f.coeff(0), Rat(1));
  }
}

TEST(Pochhammer, OddShiftIdentity) {
  // (1-q)(q^3;q^2)_k = (1-q^{2k+1})(q;q^2)_k
  for (Exponent k = 0; k <= 30; ++k)
    ASSERT_EQ((one - q) * pochhammer({1, 3, 2, k}), one_minus_q_pow(2 * k + 1) * pochhammer({1, 1, 2, k})) << k;
}

TEST(GaussianBinomial, Examples) {
  EXPECT_EQ(gaussian_binomial(7, 0), one);
  EXPECT_EQ(gaussian_binomial(2, 1), one + q);
  EXPECT_EQ(to_text(gaussian_binomial(4, 2)), "1 + q + 2 q^2 + q^3 + q^4");
  EXPECT_THROW(gaussian_binomial(3, 4), std::invalid_argument);
}

TEST(GaussianBinomial, SymmetryAndPascalRule) {
  for (long m = 1; m <= 40; ++m) {
    for (long k = 0; k <= m; ++k) {
      const LaurentPoly g = gaussian_binomial(m, k);
      ASSERT_EQ(g, gaussian_binomial(m, m - k));
      if (k >= 1 && k < m) {
        ASSERT_EQ(g, gaussian_binomial(m - 1, k - 1) + LaurentPoly::q(k) * gaussian_binomial(m - 1, k)) << m << " " << k;
      }
    }
  }
}

TEST(GaussianBinomial, ValueAtOneIsBinomial) {
  for (long m = 0; m <= 30; ++m) {
    mpz_class b = 1;
    for (long k = 0; k <= m; ++k) {
      ASSERT_EQ(gaussian_binomial(m, k).evaluate(1), Rat(b));
      b = b * (m - k) / (k + 1);
    }
  }
}

TEST(GaussianBinomial, CentralQuotientMatchesDivexact) {
  for (long n = 1; n <= 20; ++n) {
    const LaurentPoly direct = divexact(q_factorial(2 * n), q_factorial(n) * q_factorial(n));
    ASSERT_EQ(gaussian_binomial(2 * n, n), direct);
  }
}
