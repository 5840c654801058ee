#include "pinvq/exact.hpp"

#include <string>
#include <utility>

namespace pinvq {

namespace {

void swap_rows(QMatrix& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

// In-place reduction to reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> reduce_to_rref(QMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    swap_rows(a, row, pivot);

    const GaussRat inv = GaussRat(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;

    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const GaussRat factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) {
        if (!a(row, j).is_zero()) a(i, j) -= factor * a(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

void require_square(const QMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + " needs a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

bool is_hermitian(const QMatrix& a) { return a.adjoint() == a; }

}  // namespace

RankFactorization rank_factorize(const QMatrix& a) {
  QMatrix r = a;
  RankFactorization out;
  out.pivot_columns = reduce_to_rref(r);
  out.rank = out.pivot_columns.size();
  out.left = a.select_columns(out.pivot_columns);
  out.right = r.leading_rows(out.rank);
  return out;
}

QMatrix inverse(const QMatrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = reduce_to_rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
    throw SingularMatrixError("matrix is singular");
  }
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

GaussRat determinant(const QMatrix& a) {
  require_square(a, "determinant");
  QMatrix w = a;
  GaussRat det(1);
  const std::size_t n = w.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && w(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return GaussRat(0);
    if (pivot != col) {
      swap_rows(w, col, pivot);
      det = -det;
    }
    det *= w(col, col);
    const GaussRat inv = GaussRat(1) / w(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (w(i, col).is_zero()) continue;
      const GaussRat factor = w(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) w(i, j) -= factor * w(col, j);
    }
  }
  return det;
}

QMatrix pinv_exact(const QMatrix& a) {
  const RankFactorization rf = rank_factorize(a);
  if (rf.rank == 0) return QMatrix::zeros(a.cols(), a.rows());
  const QMatrix fh = rf.left.adjoint();
  const QMatrix gh = rf.right.adjoint();
  return gh * inverse(rf.right * gh) * inverse(fh * rf.left) * fh;
}

bool penrose_check(const QMatrix& a, const QMatrix& x) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    throw DimensionError("penrose_check: candidate is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", expected " + std::to_string(a.cols()) +
                         "x" + std::to_string(a.rows()));
  }
  const QMatrix ax = a * x;
  const QMatrix xa = x * a;
  return ax * a == a && xa * x == x && is_hermitian(ax) && is_hermitian(xa);
}

LeastSquares lsq_exact(const QMatrix& a, const QVector& b) {
  if (b.dim() != a.rows()) {
    throw DimensionError("lsq: right-hand side has dimension " + std::to_string(b.dim()) +
                         ", matrix has " + std::to_string(a.rows()) + " rows");
  }
  QVector xhat = pinv_exact(a) * b;
  Rat residual = norm_sq(a * xhat - b);
  return {std::move(xhat), std::move(residual)};
}

Rat cond_sq_exact(const QMatrix& a) {
  const Rat fa = frob_norm_sq(a);
  if (sgn(fa) == 0) return Rat(0);
  return fa * frob_norm_sq(pinv_exact(a));
}

}  // namespace pinvq
