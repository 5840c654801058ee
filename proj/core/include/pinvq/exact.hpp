#pragma once

#include <cstddef>
#include <vector>

#include "pinvq/matrix.hpp"

namespace pinvq {

/// A = F·G with F (m×p) of full column rank and G (p×n) of full row rank.
/// For the zero matrix p = 0 and F, G have a zero extent.
struct RankFactorization {
  std::size_t rank = 0;
  QMatrix left{0, 0};   // F
  QMatrix right{0, 0};  // G
  std::vector<std::size_t> pivot_columns;
};

/// Exact Gauss-Jordan elimination. Pivot rule: leftmost column first, then the
/// smallest row index holding a nonzero entry. F collects the pivot columns of
/// A, G the nonzero rows of the reduced row echelon form.
RankFactorization rank_factorize(const QMatrix& a);

/// Exact inverse of a square matrix; throws SingularMatrixError.
QMatrix inverse(const QMatrix& a);

/// Exact determinant of a square matrix.
GaussRat determinant(const QMatrix& a);

/// Moore-Penrose pseudoinverse via A† = G^H (G G^H)^{-1} (F^H F)^{-1} F^H.
/// Returns the n×m zero matrix for A = 0.
QMatrix pinv_exact(const QMatrix& a);

/// True iff AXA = A, XAX = X, (AX)^H = AX and (XA)^H = XA hold exactly.
/// Throws DimensionError unless X is n×m for an m×n A.
bool penrose_check(const QMatrix& a, const QMatrix& x);

struct LeastSquares {
  QVector xhat;      // minimum-norm minimizer A†b
  Rat residual_sq;   // ‖A·xhat − b‖₂²
};

LeastSquares lsq_exact(const QMatrix& a, const QVector& b);

/// κ(A)² = ‖A‖_F²·‖A†‖_F². By convention κ(0)² = 0.
Rat cond_sq_exact(const QMatrix& a);

}  // namespace pinvq
