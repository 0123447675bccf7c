#include <gtest/gtest.h>

#include "modforms/dims.hpp"

using namespace modforms;
using namespace modforms::dims;

TEST(Dims, LevelOne) {
  EXPECT_EQ(dim_sk_level1(12), 1);
  EXPECT_EQ(dim_sk_level1(14), 0);
  EXPECT_EQ(dim_sk_level1(24), 2);
  EXPECT_EQ(dim_mk_level1(0), 1);
  EXPECT_EQ(dim_sk_level1(0), 0);
  EXPECT_EQ(dim_mk_level1(2), 0);
  EXPECT_THROW(dim_mk_level1(3), Error);
  EXPECT_THROW(dim_mk_level1(-2), Error);
}

// Count (a, b) with 4a + 6b = k: the dimension of M_k for SL2(Z).
TEST(Dims, LevelOneMatchesMonomialCount) {
  for (long k = 0; k <= 100; k += 2) {
    long count = 0;
    for (long a = 0; 4 * a <= k; ++a)
      if ((k - 4 * a) % 6 == 0) ++count;
    ASSERT_EQ(dim_mk_level1(k), count) << k;
    if (k >= 2) {
      ASSERT_EQ(dim_gamma0(1, k, Space::full), dim_mk_level1(k)) << k;
      ASSERT_EQ(dim_gamma0(1, k, Space::cusp), dim_sk_level1(k)) << k;
    }
  }
}

TEST(Dims, Gamma0Examples) {
  EXPECT_EQ(dim_gamma0(4, 2, Space::full), 2);
  EXPECT_EQ(dim_gamma0(4, 2, Space::cusp), 0);
  EXPECT_EQ(dim_gamma0(11, 2, Space::cusp), 1);
  EXPECT_EQ(dim_gamma0(22, 2, Space::cusp), 2);
  EXPECT_EQ(dim_gamma0(4, 0, Space::full), 1);
  EXPECT_EQ(dim_gamma0(4, 0, Space::cusp), 0);
  EXPECT_EQ(dim_gamma0(23, 2, Space::cusp), 2);
  EXPECT_EQ(dim_gamma0(37, 2, Space::cusp), 2);
  EXPECT_EQ(dim_gamma0(4, 6, Space::cusp), 1);
  EXPECT_THROW(dim_gamma0(4, 3, Space::full), Error);
}

TEST(Dims, NewSpaces) {
  EXPECT_EQ(dim_new(22, 2), 0);
  EXPECT_EQ(dim_new(11, 2), 1);
  EXPECT_EQ(dim_new(1, 12), 1);
  EXPECT_EQ(dim_new(37, 2), 2);
  EXPECT_EQ(beta(4), 1);
  EXPECT_EQ(beta(8), 0);
  EXPECT_EQ(beta(6), 4);
}

TEST(Dims, FormulaTermsAreIntegral) {
  for (long N = 1; N <= 500; ++N)
    for (long k = 2; k <= 24; k += 2) {
      ASSERT_NO_THROW(dim_gamma0(N, k, Space::full)) << N << " " << k;
      ASSERT_NO_THROW(dim_gamma0(N, k, Space::cusp)) << N << " " << k;
    }
}

// Dimensions grow with k except for the level-1 drop from weight 12 to 14
// (M_14 = C E4^2 E6 while M_12 contains Delta); every drop is recorded.
TEST(Dims, NondecreasingInWeightExceptLevelOne) {
  std::vector<std::string> drops;
  for (long N = 1; N <= 200; ++N)
    for (long k = 2; k + 2 <= 24; k += 2)
      for (Space sp : {Space::full, Space::cusp})
        if (dim_gamma0(N, k + 2, sp) < dim_gamma0(N, k, sp))
          drops.push_back(std::to_string(N) + ":" + std::to_string(k) + (sp == Space::full ? "M" : "S"));
  EXPECT_EQ(drops, (std::vector<std::string>{"1:12M", "1:12S"}));
}

TEST(Dims, OldNewDecomposition) {
  EXPECT_TRUE(olddecomp_check(22, 2));
  EXPECT_TRUE(olddecomp_check(4, 12));
  for (long k = 2; k <= 40; k += 2) EXPECT_TRUE(olddecomp_check(1, k));
  for (long N = 1; N <= 200; ++N)
    for (long k : {2L, 4L, 6L, 12L}) {
      ASSERT_TRUE(olddecomp_check(N, k)) << N << " " << k;
      ASSERT_GE(dim_new(N, k), 0) << N << " " << k;
    }
}
