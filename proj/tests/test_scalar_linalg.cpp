#include <gtest/gtest.h>

#include <climits>

#include "voa/linalg.hpp"
#include "voa/scalar.hpp"

using namespace voa;

TEST(Scalar, OverflowPromotesAndDemotes) {
  Scalar big = Scalar(LLONG_MAX) + Scalar(1);
  EXPECT_EQ(big.str(), "9223372036854775808");
  EXPECT_EQ(big - Scalar(1), Scalar(LLONG_MAX));
  Scalar sq = big * big;
  EXPECT_EQ(sq / big, big);
  EXPECT_EQ((sq / big / big).str(), "1");
}

TEST(Scalar, ParseAndNormalize) {
  EXPECT_EQ(Scalar::parse("2/4"), Scalar(1, 2));
  EXPECT_EQ(Scalar::parse("-22/5").str(), "-22/5");
  EXPECT_EQ(Scalar(6, -4).str(), "-3/2");
  EXPECT_THROW(Scalar::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Scalar::parse("1/0"), std::invalid_argument);
}

TEST(Scalar, Binomials) {
  EXPECT_EQ(binomial(5, 2), Scalar(10));
  for (int j = 0; j < 8; ++j) EXPECT_EQ(binomial(-1, j), Scalar(j % 2 ? -1 : 1));
  EXPECT_EQ(binomial(-3, 2), Scalar(6));
  EXPECT_EQ(binomial(3, 5), Scalar(0));
  EXPECT_EQ(factorial(25).str(), "15511210043330985984000000");
}

TEST(Linalg, HilbertDeterminantAndInverse) {
  Matrix h(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h(i, j) = Scalar(1, i + j + 1);
  EXPECT_EQ(determinant(h), Scalar(1, 2160));
  auto inv = inverse(h);
  ASSERT_TRUE(inv);
  EXPECT_EQ(h * *inv, Matrix::identity(3));
  EXPECT_EQ((*inv)(0, 0), Scalar(9));
}

TEST(Linalg, KernelAndRank) {
  Matrix m = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
  EXPECT_EQ(rank(m), 2u);
  auto ker = rref_kernel(m);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_TRUE(is_zero(m * ker[0]));
  EXPECT_FALSE(is_zero(ker[0]));
}

TEST(Linalg, LeadingMinors) {
  Matrix d = Matrix::from_rows({{2, 1}, {1, -1}}, 2);
  MinorReport r = leading_minors(d);
  EXPECT_FALSE(r.positive_definite);
  ASSERT_TRUE(r.first_failure);
  EXPECT_EQ(*r.first_failure, 2u);
  EXPECT_EQ(r.minors.back(), Scalar(-3));
  EXPECT_TRUE(is_positive_semidefinite(Matrix::from_rows({{1, 1}, {1, 1}}, 2)));
  EXPECT_FALSE(is_positive_semidefinite(d));
}

TEST(Linalg, RadicalQuotient) {
  Matrix g = Matrix::from_rows({{1, 1}, {1, 1}}, 2);
  RadicalQuotient q = quotient_by_radical(g, 2);
  EXPECT_EQ(q.new_dim, 1u);
  EXPECT_THROW(quotient_by_radical(Matrix::from_rows({{1, 2}, {0, 1}}, 2), 2), std::invalid_argument);
}

TEST(Linalg, SparseRoundTrip) {
  Matrix m = Matrix::from_rows({{0, Scalar(1, 3)}, {2, 0}}, 2);
  SparseMatrix s = SparseMatrix::from_dense(m);
  EXPECT_EQ(s.nonzeros(), 2u);
  EXPECT_EQ(s.to_dense(), m);
  EXPECT_EQ((s * s).to_dense(), m * m);
  EXPECT_EQ(s.transpose().to_dense(), m.transpose());
}
