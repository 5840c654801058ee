#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pinvq/errors.hpp"
#include "pinvq/exact.hpp"

using namespace pinvq;

TEST(Exact, RankFactorizationReconstructs) {
  oracle::MatrixGenerator gen(21);
  for (int i = 0; i < 200; ++i) {
    const QMatrix a = gen.any();
    const RankFactorization rf = rank_factorize(a);
    EXPECT_EQ(rf.rank, oracle::rank_by_elimination(a));
    if (rf.rank == 0) {
      EXPECT_TRUE(a.is_zero());
      continue;
    }
    EXPECT_EQ(rf.left * rf.right, a);
    EXPECT_EQ(rf.left.cols(), rf.rank);
    EXPECT_EQ(rf.right.rows(), rf.rank);
  }
}

TEST(Exact, PinvOfFamilyPoint) {
  const QMatrix a{{1, 0}, {0, Rat(1, 2)}, {0, 0}};
  EXPECT_EQ(pinv_exact(a), (QMatrix{{1, 0, 0}, {0, 2, 0}}));
}

TEST(Exact, PinvOfZeroIsZeroTransposeShape) {
  const QMatrix z(3, 2);
  EXPECT_EQ(pinv_exact(z), QMatrix(2, 3));
}

TEST(Exact, PinvOfInvertibleIsInverse) {
  const QMatrix a{{2, 1}, {1, 1}};
  EXPECT_EQ(pinv_exact(a), (QMatrix{{1, -1}, {-1, 2}}));
  EXPECT_EQ(pinv_exact(a), inverse(a));
}

TEST(Exact, PinvRankOneOuterProduct) {
  // u v^T with u = (1, 2), v = (1, 1): A† = v u^T / (|u|²|v|²)
  const QMatrix a{{1, 1}, {2, 2}};
  EXPECT_EQ(pinv_exact(a), (QMatrix{{Rat(1, 10), Rat(1, 5)}, {Rat(1, 10), Rat(1, 5)}}));
}

TEST(Exact, PenroseConditionsOnRandomMatrices) {
  oracle::MatrixGenerator gen(22);
  for (int i = 0; i < 150; ++i) {
    const QMatrix a = gen.any();
    const QMatrix x = pinv_exact(a);
    EXPECT_TRUE(penrose_check(a, x));
    EXPECT_EQ(pinv_exact(x), a);                 // (A†)† = A
    EXPECT_EQ(pinv_exact(a.adjoint()), x.adjoint());
  }
}

TEST(Exact, PenroseCheckRejectsWrongCandidates) {
  const QMatrix a{{1, 0}, {0, 0}};
  EXPECT_FALSE(penrose_check(a, QMatrix{{1, 0}, {0, 1}}));
  EXPECT_THROW(penrose_check(a, QMatrix(3, 2)), DimensionError);
}

TEST(Exact, InverseAndDeterminant) {
  const QMatrix a{{1, 2}, {3, 4}};
  EXPECT_EQ(determinant(a), GaussRat(-2));
  EXPECT_EQ(a * inverse(a), QMatrix::identity(2));
  EXPECT_THROW(inverse(QMatrix{{1, 2}, {2, 4}}), SingularMatrixError);
  EXPECT_THROW(inverse(QMatrix(2, 3)), DimensionError);
  EXPECT_EQ(determinant(QMatrix{{GaussRat(0, 1), 0}, {0, GaussRat(0, 1)}}), GaussRat(-1));
}

TEST(Exact, LeastSquaresFamilyPoints) {
  const QMatrix a0{{1, 0}, {0, 0}};
  const QVector b{1, 1};
  const LeastSquares ls0 = lsq_exact(a0, b);
  EXPECT_EQ(ls0.xhat, (QVector{1, 0}));
  EXPECT_EQ(ls0.residual_sq, 1);

  const QMatrix ah{{1, 0}, {0, Rat(1, 2)}};
  const LeastSquares ls = lsq_exact(ah, b);
  EXPECT_EQ(ls.xhat, (QVector{1, 2}));
  EXPECT_EQ(ls.residual_sq, 0);
  EXPECT_THROW(lsq_exact(a0, QVector{1, 1, 1}), DimensionError);
}

TEST(Exact, LeastSquaresIsMinimumNormMinimizer) {
  oracle::MatrixGenerator gen(23);
  for (int i = 0; i < 60; ++i) {
    const QMatrix a = gen.any();
    const QVector b(std::vector<GaussRat>(a.rows(), GaussRat(1)));
    const LeastSquares ls = lsq_exact(a, b);
    // Normal equations: A^H (A x̂ − b) = 0.
    const QVector grad = a.adjoint() * (a * ls.xhat - b);
    EXPECT_EQ(norm_sq(grad), 0);
    // x̂ lies in range(A^H): x̂ = A^H y for y = (A†)^H x̂.
    EXPECT_EQ(a.adjoint() * (pinv_exact(a).adjoint() * ls.xhat), ls.xhat);
  }
}

TEST(Exact, ConditionNumberSquared) {
  EXPECT_EQ(cond_sq_exact(QMatrix{{1, 0}, {0, Rat(1, 2)}}), Rat(25, 4));
  EXPECT_EQ(cond_sq_exact(QMatrix{{1, 0}, {0, 0}}), 1);
  EXPECT_EQ(cond_sq_exact(QMatrix(2, 2)), 0);
  EXPECT_EQ(cond_sq_exact(QMatrix::identity(3)), 9);
}
