#include "isoform/matrix.hpp"

#include <utility>

#include "isoform/error.hpp"

namespace isoform {

namespace {

void check_ring(const Matrix& a, const Matrix& b) {
  if (!(a.ring() == b.ring()))
    raise(Errc::RingMismatch, a.ring().to_string() + " vs " + b.ring().to_string());
}

}  // namespace

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(const Ring& ring, const std::vector<Vec>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Matrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

Matrix Matrix::from_columns(const Ring& ring, const std::vector<Vec>& cols, std::size_t rows) {
  return from_rows(ring, cols, rows).transpose();
}

Matrix Matrix::diagonal(const Ring& ring, const Vec& diag) {
  Matrix m(ring, diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

Vec Matrix::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
  require(v.size() == cols_, Errc::DimensionMismatch, "row length does not match matrix width");
  for (std::size_t j = 0; j < cols_; ++j) set(i, j, v[j]);
}

std::vector<Vec> Matrix::to_rows() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
  return t;
}

bool Matrix::is_symmetric() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Matrix::is_zero() const noexcept {
  for (Int x : data_)
    if (x != 0) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_ring(a, b);
  require(a.cols() == b.rows(), Errc::DimensionMismatch, "matrix product shape mismatch");
  const Ring& ring = a.ring();
  Matrix c(ring, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Int acc = 0;
      for (std::size_t l = 0; l < a.cols(); ++l) acc = (acc + a(i, l) * b(l, j)) % ring.modulus();
      c.set(i, j, acc);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_ring(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::DimensionMismatch, "matrix sum shape mismatch");
  Matrix c(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j) + b(i, j));
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  check_ring(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::DimensionMismatch, "matrix difference shape mismatch");
  Matrix c(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j) - b(i, j));
  return c;
}

Vec operator*(const Matrix& a, const Vec& v) {
  require(a.cols() == v.size(), Errc::DimensionMismatch, "matrix-vector shape mismatch");
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.ring(), a.row_span(i), v);
  return out;
}

Matrix scale(const Matrix& a, Int s) {
  Matrix c(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a.ring().mul(a(i, j), a.ring().reduce(s)));
  return c;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  check_ring(a, b);
  const Ring& ring = a.ring();
  Matrix c(ring, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c.set(i * b.rows() + k, j * b.cols() + l, ring.mul(a(i, j), b(k, l)));
  return c;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  check_ring(a, b);
  Matrix c(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c.set(a.rows() + i, a.cols() + j, b(i, j));
  return c;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  check_ring(top, bottom);
  require(top.cols() == bottom.cols(), Errc::DimensionMismatch, "vstack width mismatch");
  Matrix c(top.ring(), top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i) c.set_row(i, top.row(i));
  for (std::size_t i = 0; i < bottom.rows(); ++i) c.set_row(top.rows() + i, bottom.row(i));
  return c;
}

Matrix residue(const Matrix& a) {
  Matrix r(a.ring().residue_field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.set(i, j, a(i, j));
  return r;
}

Matrix lift(const Matrix& a, const Ring& target) {
  require(a.ring().p() == target.p(), Errc::RingMismatch, "lift target has a different prime");
  Matrix r(target, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.set(i, j, a(i, j));
  return r;
}

Int determinant(const Matrix& a) {
  require(a.is_square(), Errc::DimensionMismatch, "determinant of a non-square matrix");
  const Ring& ring = a.ring();
  const std::size_t n = a.rows();
  std::vector<Vec> m = a.to_rows();
  Int det = 1 % ring.modulus();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    int best = ring.k() + 1;
    for (std::size_t r = c; r < n; ++r) {
      if (m[r][c] == 0) continue;
      int v = ring.valuation(m[r][c]);
      if (v < best) {
        best = v;
        pivot = r;
      }
    }
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = ring.neg(det);
    }
    Int p_v = 1;
    for (int i = 0; i < best; ++i) p_v *= ring.p();
    const Int unit_inv = ring.inv(m[c][c] / p_v);
    det = ring.mul(det, m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Int t = ring.mul(m[r][c] / p_v, unit_inv);
      for (std::size_t j = c; j < n; ++j) m[r][j] = ring.sub(m[r][j], ring.mul(t, m[c][j]));
    }
  }
  return det;
}

std::size_t residue_rank(const Matrix& a) {
  const Ring f = a.ring().residue_field();
  std::vector<Vec> m = residue(a).to_rows();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    const Int inv = f.inv(m[rank][c]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const Int t = f.mul(m[r][c], inv);
      for (std::size_t j = c; j < a.cols(); ++j) m[r][j] = f.sub(m[r][j], f.mul(t, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

bool is_invertible_matrix(const Matrix& a) {
  require(a.is_square(), Errc::DimensionMismatch, "invertibility of a non-square matrix");
  return residue_rank(a) == a.rows();
}

std::optional<Matrix> inverse(const Matrix& a) {
  require(a.is_square(), Errc::DimensionMismatch, "inverse of a non-square matrix");
  const Ring& ring = a.ring();
  const std::size_t n = a.rows();
  std::vector<Vec> m = a.to_rows();
  std::vector<Vec> inv = Matrix::identity(ring, n).to_rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && !ring.is_unit(m[pivot][c])) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[c]);
    std::swap(inv[pivot], inv[c]);
    const Int s = ring.inv(m[c][c]);
    m[c] = scale(ring, m[c], s);
    inv[c] = scale(ring, inv[c], s);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Int t = ring.neg(m[r][c]);
      m[r] = axpy(ring, m[r], t, m[c]);
      inv[r] = axpy(ring, inv[r], t, inv[c]);
    }
  }
  return Matrix::from_rows(ring, inv, n);
}

Int dot(const Ring& ring, std::span<const Int> a, std::span<const Int> b) {
  require(a.size() == b.size(), Errc::DimensionMismatch, "dot product length mismatch");
  Int acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = (acc + a[i] * b[i]) % ring.modulus();
  return acc;
}

Vec add(const Ring& ring, const Vec& a, const Vec& b) {
  require(a.size() == b.size(), Errc::DimensionMismatch, "vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.add(a[i], b[i]);
  return out;
}

Vec sub(const Ring& ring, const Vec& a, const Vec& b) {
  require(a.size() == b.size(), Errc::DimensionMismatch, "vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.sub(a[i], b[i]);
  return out;
}

Vec scale(const Ring& ring, const Vec& a, Int s) {
  s = ring.reduce(s);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.mul(a[i], s);
  return out;
}

Vec axpy(const Ring& ring, const Vec& a, Int s, const Vec& b) {
  require(a.size() == b.size(), Errc::DimensionMismatch, "vector length mismatch");
  s = ring.reduce(s);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.add(a[i], ring.mul(s, b[i]));
  return out;
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

bool is_zero(const Vec& v) noexcept {
  for (Int x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace isoform
