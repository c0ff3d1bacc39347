#include <gtest/gtest.h>

#include "qcongr/verify.hpp"

using namespace qcongr;

namespace {

const LaurentPoly q = LaurentPoly::q(1);
const LaurentPoly one(1);

const std::vector<std::string> kTheoremChecks = {"thm1.1a", "thm1.1b", "thm1.2a", "thm1.2b"};

}  // namespace

TEST(LhsSum, Examples) {
  auto m = make_modulus(3, 2);
  EXPECT_EQ(lhs_sum(m, 3, 1, 1), reduce(m, -LaurentPoly::q(2)));
  EXPECT_EQ(lhs_sum(m, 3, -1, 1), reduce(m, LaurentPoly::q(2) - (one + q) * q_integer(3)));
  EXPECT_TRUE(lhs_sum(m, 1, 3, 1).is_one());
}

TEST(LhsSum, IncrementalMatchesNaive) {
  const std::vector<std::pair<Exponent, Exponent>> shapes = {{1, 1}, {-1, 1}, {3, 1}, {-1, 2}, {1, 2}};
  for (long n = 3; n <= 25; n += 2) {
    for (int e : {1, 2}) {
      auto m = make_modulus(n, e);
      for (auto [a, c] : shapes) ASSERT_EQ(lhs_sum(m, n, a, c), lhs_sum_naive(m, n, a, c)) << n << " " << a << " " << c;
    }
  }
}

TEST(RhsValue, Examples) {
  auto m5 = make_modulus(5, 1);
  EXPECT_EQ(rhs_value(m5, 5, find_check("GZcon").rhs), q_power(m5, 6));
  auto m3 = make_modulus(3, 2);
  EXPECT_EQ(rhs_value(m3, 3, find_check("thm1.2b").rhs),
            reduce(m3, one + (one + q) * LaurentPoly::q(-2) * q_integer(3)));
}

TEST(RhsValue, NonIntegralExponentIsRejected) {
  EXPECT_THROW((QuarterQuadratic{1, 0, 0}.at(3)), std::logic_error);
  EXPECT_EQ((QuarterQuadratic{-1, 6, -9}.at(7)), -4);
}

TEST(RhsValue, TheoremFormsCollapseModPhi) {
  // [n] vanishes mod Phi_n, leaving the first-power congruences
  for (long n = 3; n <= 99; n += 2) {
    auto m = make_modulus(n, 1);
    const Residue gg1 = rhs_value(m, n, find_check("GGcon1").rhs);
    const Residue gg2 = rhs_value(m, n, find_check("GGcon2").rhs);
    const Residue gz = rhs_value(m, n, find_check("GZcon").rhs);
    ASSERT_EQ(rhs_value(m, n, find_check("thm1.1a").rhs), gg1) << n;
    ASSERT_EQ(rhs_value(m, n, find_check("thm1.2b").rhs), gg2) << n;
    // same sums at q^{2k}: q^{(n^2+3)/4} = q * q^{(n^2-1)/4}, q^{(n^2-5)/4} = q^{-1} q^{(n^2-1)/4}
    ASSERT_EQ(rhs_value(m, n, find_check("thm1.1b").rhs), gg1 * q_power(m, 1)) << n;
    ASSERT_EQ(rhs_value(m, n, find_check("thm1.2a").rhs), gz * q_power(m, -1)) << n;
  }
}

TEST(Check, Examples) {
  EXPECT_TRUE(check("thm1.1a", 3).pass);
  for (long n = 3; n <= 99; n += 2) ASSERT_TRUE(check("guokey", n).pass) << n;
}

TEST(Check, RejectsEvenOrSmallN) {
  EXPECT_THROW(check("guokey", 4), std::invalid_argument);
  EXPECT_THROW(check("guokey", 1), std::invalid_argument);
  EXPECT_THROW(check("guokey", -3), std::invalid_argument);
  EXPECT_THROW(check("nope", 3), std::invalid_argument);
}

TEST(Check, SignMutationIsDetected) {
  CongruenceCheck mutated = find_check("thm1.1a");
  mutated.rhs.sign = SignParity::n_minus_1;
  ModulusPool pool;
  const CellResult r = check_with(mutated, 5, pool);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.lhs, r.rhs);
  EXPECT_EQ(r.lhs, check("thm1.1a", 5).lhs);
}

TEST(Check, SupercongruencesFailAtHigherPower) {
  // the first-power results really are only mod Phi_n for some n
  int failures = 0;
  for (long n = 3; n <= 15; n += 2) failures += !check("GGcon1", n, 2).pass;
  EXPECT_GT(failures, 0);
}

TEST(Check, ConsistencyLadder) {
  for (const auto& c : catalog()) {
    if (c.e != 2) continue;
    for (long n = 3; n <= 49; n += 2) {
      ASSERT_TRUE(check(c.id, n).pass) << c.id << " " << n;
      ASSERT_TRUE(check(c.id, n, 1).pass) << c.id << " " << n;
    }
  }
}

TEST(Check, TheoremFromLemmaReconstruction) {
  // sum (q^{-1};q^2)_k/(q;q)_k q^k + sum (q;q^2)_k/(q;q)_k q^k = (1+q^{n-1})(q;q^2)_{n-1}/(q;q)_{n-1}
  for (long n = 3; n <= 49; n += 2) {
    auto m = make_modulus(n, 2);
    const Residue combined = lhs_sum(m, n, -1, 1) + lhs_sum(m, n, 1, 1);
    const Residue closed = reduce(m, (one + LaurentPoly::q(n - 1)) * pochhammer({1, 1, 2, n - 1})) *
                           reduce(m, q_factorial(n - 1)).inverse();
    ASSERT_EQ(combined, closed) << n;
  }
}

TEST(Check, ExactLemmaIdentity) {
  for (long n = 3; n <= 21; n += 2) {
    const CellResult r = check("aux-exact-lemma22", n);
    ASSERT_TRUE(r.pass) << n;
    EXPECT_EQ(r.e, 0);
    EXPECT_EQ(r.lhs, r.rhs);
  }
}

TEST(Sweep, EmptyAndOrdering) {
  EXPECT_TRUE(sweep({}, 99).empty());
  const auto cells = sweep({"lemma2.2"}, 49);
  ASSERT_EQ(cells.size(), 24U);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    EXPECT_EQ(cells[i].n, static_cast<long>(3 + 2 * i));
    EXPECT_TRUE(cells[i].pass) << cells[i].n;
  }
  const auto two = sweep({"GZcon", "aux-negpoch", "GZcon"}, 9);
  ASSERT_EQ(two.size(), 8U);
  EXPECT_EQ(two[0].check, "GZcon");
  EXPECT_EQ(two[4].check, "aux-negpoch");
}

TEST(Sweep, TheoremsHoldAndOutputIsDeterministic) {
  const auto a = sweep(kTheoremChecks, 41);
  const auto b = sweep(kTheoremChecks, 41);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_TRUE(a[i].pass) << a[i].check << " " << a[i].n;
    ASSERT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
  }
}

TEST(Report, JsonShapeAndTable) {
  const CellResult r = check("GZcon", 5);
  const json j = to_json(r);
  EXPECT_EQ(j.at("check"), "GZcon");
  EXPECT_EQ(j.at("n"), 5);
  EXPECT_EQ(j.at("e"), 1);
  EXPECT_EQ(j.at("status"), "pass");
  EXPECT_EQ(poly_from_json(j.at("lhs")), poly_from_json(j.at("rhs")));
  const std::string table = render_table({r});
  EXPECT_NE(table.find("GZcon"), std::string::npos);
  EXPECT_NE(table.find("1/1 cells passed"), std::string::npos);
}
