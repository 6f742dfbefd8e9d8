#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "voa/scalar.hpp"

namespace voa {

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, size_t cols);
  static Matrix from_columns(const std::vector<Vec>& cols, size_t rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  Vec row(size_t i) const;
  Vec column(size_t j) const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  bool is_zero() const;
  bool is_symmetric() const;
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

class SparseMatrix {
 public:
  using Entry = std::pair<uint32_t, Scalar>;

  SparseMatrix() = default;
  SparseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows) {}
  // duplicates are summed, zeros dropped
  static SparseMatrix from_triplets(size_t rows, size_t cols,
                                    const std::vector<std::tuple<size_t, size_t, Scalar>>& entries);
  static SparseMatrix from_dense(const Matrix& m);
  static SparseMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t nonzeros() const;
  bool is_zero() const;
  const std::vector<Entry>& row(size_t i) const { return data_[i]; }
  Scalar at(size_t i, size_t j) const;
  std::vector<std::tuple<size_t, size_t, Scalar>> triplets() const;

  Matrix to_dense() const;
  SparseMatrix transpose() const;
  Vec apply(const Vec& v) const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix scaled(const Scalar& s) const;
  // this += s * o
  void add_scaled(const SparseMatrix& o, const Scalar& s);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) = default;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<Entry>> data_;  // sorted by column, no zeros
};

struct RowEchelon {
  Matrix reduced;               // fully reduced, zero rows at the bottom
  std::vector<size_t> pivots;   // pivot column of each nonzero row
};

RowEchelon rref(Matrix m);
size_t rank(const Matrix& m);

// kernel basis from the RREF, one vector per free column in index order
std::vector<Vec> rref_kernel(const Matrix& m);
std::vector<Vec> rref_kernel(const SparseMatrix& m);

struct RadicalQuotient {
  SparseMatrix projection;          // new_dim x basis_size
  size_t new_dim = 0;
  std::vector<size_t> kept;         // old basis indices representing the quotient basis
};

// Throws std::invalid_argument("asymmetric Gram matrix").
RadicalQuotient quotient_by_radical(const Matrix& gram, size_t basis_size);
RadicalQuotient quotient_by_radical(const SparseMatrix& gram, size_t basis_size);

std::optional<Matrix> inverse(const Matrix& m);
// solve A x = b, nullopt if singular or inconsistent
std::optional<Vec> solve(const Matrix& a, const Vec& b);
Scalar determinant(Matrix m);

// Leading principal minors, computed until the first non-positive one.
struct MinorReport {
  std::vector<Scalar> minors;
  bool positive_definite = true;
  std::optional<size_t> first_failure;   // 1-based order of the failing minor
};
MinorReport leading_minors(const Matrix& m);

// exact test via symmetric elimination
bool is_positive_semidefinite(const Matrix& m);

Scalar dot(const Vec& a, const Vec& b);
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Scalar& s);
void axpy(Vec& y, const Scalar& s, const Vec& x);
// x^T G y
Scalar bilinear(const Vec& x, const Matrix& g, const Vec& y);

}  // namespace voa
