#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "isoform/ring.hpp"

namespace isoform {

/// Dense row-major matrix of canonical residues over a Ring.
class Matrix {
 public:
  Matrix(const Ring& ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(const Ring& ring, std::size_t n);
  /// Builds from row vectors; entries are reduced into the ring. An empty
  /// list yields a 0 x cols matrix.
  static Matrix from_rows(const Ring& ring, const std::vector<Vec>& rows, std::size_t cols = 0);
  static Matrix from_columns(const Ring& ring, const std::vector<Vec>& cols, std::size_t rows = 0);
  static Matrix diagonal(const Ring& ring, const Vec& diag);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Int operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Int value) noexcept { data_[i * cols_ + j] = ring_.reduce(value); }

  std::span<const Int> row_span(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
  Vec row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
  Vec col(std::size_t j) const;
  void set_row(std::size_t i, const Vec& v);
  std::vector<Vec> to_rows() const;

  Matrix transpose() const;
  bool is_symmetric() const noexcept;
  bool is_zero() const noexcept;

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Int> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, const Vec& v);

Matrix scale(const Matrix& a, Int s);
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& top, const Matrix& bottom);

/// Entrywise reduction to F_p, and canonical lift back to a ring with the same p.
Matrix residue(const Matrix& a);
Matrix lift(const Matrix& a, const Ring& target);

/// Exact determinant. Over Z/p^k elimination pivots on an entry of minimal
/// p-adic valuation, which divides the rest of its column in a chain ring.
Int determinant(const Matrix& a);

/// Rank of the residue matrix over F_p.
std::size_t residue_rank(const Matrix& a);

/// Invertible over Z/p^k iff the residue matrix is invertible over F_p.
bool is_invertible_matrix(const Matrix& a);
/// Exact inverse by Gauss-Jordan with unit pivots; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);

// Vector helpers over a ring.
Int dot(const Ring& ring, std::span<const Int> a, std::span<const Int> b);
Vec add(const Ring& ring, const Vec& a, const Vec& b);
Vec sub(const Ring& ring, const Vec& a, const Vec& b);
Vec scale(const Ring& ring, const Vec& a, Int s);
/// a + s*b
Vec axpy(const Ring& ring, const Vec& a, Int s, const Vec& b);
Vec unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vec& v) noexcept;

}  // namespace isoform
