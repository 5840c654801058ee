#include "pinvq/matrix.hpp"

#include <string>

namespace pinvq {

namespace {

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": incompatible dimensions " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<GaussRat> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("matrix entry count " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<GaussRat>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

QMatrix QMatrix::adjoint() const {
  QMatrix h(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) h(j, i) = conj((*this)(i, j));
  return h;
}

bool QMatrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

bool QMatrix::is_real() const {
  for (const auto& e : data_)
    if (!e.is_real()) return false;
  return true;
}

QMatrix QMatrix::select_columns(std::span<const std::size_t> cols) const {
  QMatrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
  return out;
}

QMatrix QMatrix::leading_rows(std::size_t count) const {
  QMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
  return out;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require_same_shape(*this, o, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require_same_shape(*this, o, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(const GaussRat& s) {
  for (auto& e : data_) e *= s;
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator*(const GaussRat& s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: incompatible dimensions " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
  QMatrix c(a.rows(), b.cols());
  const bool real = a.is_real() && b.is_real();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const GaussRat& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const GaussRat& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        if (real) {
          c(i, j).re += aik.re * bkj.re;
        } else {
          c(i, j) += aik * bkj;
        }
      }
    }
  }
  return c;
}

QVector::QVector(std::size_t dim) : data_(dim) {}
QVector::QVector(std::vector<GaussRat> entries) : data_(std::move(entries)) {}
QVector::QVector(std::initializer_list<GaussRat> entries) : data_(entries) {}

QVector& QVector::operator+=(const QVector& o) {
  if (dim() != o.dim()) throw DimensionError("vector sum: incompatible dimensions");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QVector& QVector::operator-=(const QVector& o) {
  if (dim() != o.dim()) throw DimensionError("vector difference: incompatible dimensions");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QVector operator+(QVector a, const QVector& b) { return a += b; }
QVector operator-(QVector a, const QVector& b) { return a -= b; }

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.dim()) {
    throw DimensionError("matrix-vector product: matrix has " + std::to_string(a.cols()) +
                         " columns, vector has dimension " + std::to_string(x.dim()));
  }
  QVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !x[j].is_zero()) y[i] += a(i, j) * x[j];
  return y;
}

QVector operator*(const GaussRat& s, QVector x) {
  for (std::size_t i = 0; i < x.dim(); ++i) x[i] *= s;
  return x;
}

Rat frob_norm_sq(const QMatrix& a) {
  Rat s;
  for (const auto& e : a.entries()) s += abs_sq(e);
  return s;
}

Rat norm_sq(const QVector& x) {
  Rat s;
  for (const auto& e : x.entries()) s += abs_sq(e);
  return s;
}

}  // namespace pinvq
