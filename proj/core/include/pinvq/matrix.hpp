#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pinvq/errors.hpp"
#include "pinvq/rational.hpp"

namespace pinvq {

class QVector;

/// Dense row-major matrix over the Gaussian rationals.
///
/// Matrices read from files or built by callers have at least one row and
/// column. Zero extents (m×0, 0×n) are allowed so that the rank factors of a
/// zero matrix can be represented; their products are the expected zero
/// matrices.
class QMatrix {
 public:
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<GaussRat> entries);
  QMatrix(std::initializer_list<std::initializer_list<GaussRat>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  GaussRat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GaussRat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const GaussRat> entries() const { return data_; }

  /// Conjugate transpose A^H.
  [[nodiscard]] QMatrix adjoint() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_real() const;

  /// Copy of the columns listed in `cols`, in that order.
  [[nodiscard]] QMatrix select_columns(std::span<const std::size_t> cols) const;
  /// Copy of the first `count` rows.
  [[nodiscard]] QMatrix leading_rows(std::size_t count) const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const GaussRat& s);

  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GaussRat> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const GaussRat& s, QMatrix a);

/// Dense vector over the Gaussian rationals.
class QVector {
 public:
  explicit QVector(std::size_t dim);
  explicit QVector(std::vector<GaussRat> entries);
  QVector(std::initializer_list<GaussRat> entries);

  [[nodiscard]] std::size_t dim() const { return data_.size(); }
  GaussRat& operator[](std::size_t i) { return data_[i]; }
  const GaussRat& operator[](std::size_t i) const { return data_[i]; }
  [[nodiscard]] std::span<const GaussRat> entries() const { return data_; }

  QVector& operator+=(const QVector& o);
  QVector& operator-=(const QVector& o);

  friend bool operator==(const QVector& a, const QVector& b) = default;

 private:
  std::vector<GaussRat> data_;
};

QVector operator+(QVector a, const QVector& b);
QVector operator-(QVector a, const QVector& b);
QVector operator*(const QMatrix& a, const QVector& x);
QVector operator*(const GaussRat& s, QVector x);

/// Σ |a_ij|^2.
Rat frob_norm_sq(const QMatrix& a);
/// Σ |x_i|^2.
Rat norm_sq(const QVector& x);

}  // namespace pinvq
