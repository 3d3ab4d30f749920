#include "isoform/linalg.hpp"

#include <utility>

#include "isoform/error.hpp"

namespace isoform {

std::vector<std::size_t> reduce_unit_pivots(const Ring& ring, std::vector<Vec>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !ring.is_unit(rows[pivot][c])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    rows[rank] = scale(ring, rows[rank], ring.inv(rows[rank][c]));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      rows[r] = axpy(ring, rows[r], ring.neg(rows[r][c]), rows[rank]);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

Subspace Subspace::zero(const Ring& field, std::size_t ambient_dim) {
  return echelonize(Matrix(field, 0, ambient_dim));
}

Subspace Subspace::whole(const Ring& field, std::size_t ambient_dim) {
  return echelonize(Matrix::identity(field, ambient_dim));
}

bool Subspace::contains(const Vec& v) const {
  require(v.size() == ambient_dim(), Errc::AmbientMismatch, "vector outside the ambient space");
  const Ring& f = field();
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = f.reduce(v[i]);
  for (std::size_t i = 0; i < dim(); ++i) {
    const Int coeff = r[pivots_[i]];
    if (coeff != 0) r = axpy(f, r, f.neg(coeff), basis_.row(i));
  }
  return is_zero(r);
}

Subspace echelonize(const Matrix& rows) {
  const Ring& field = rows.ring();
  require(field.is_field(), Errc::InvalidRing, "echelonize needs a field");
  std::vector<Vec> work = rows.to_rows();
  std::vector<std::size_t> pivots = reduce_unit_pivots(field, work);
  work.resize(pivots.size());
  return Subspace(Matrix::from_rows(field, work, rows.cols()), std::move(pivots));
}

Subspace span_sum(const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), Errc::AmbientMismatch, "subspaces in different ambients");
  return echelonize(vstack(a.basis(), b.basis()));
}

Matrix nullspace(const Matrix& a) {
  const Ring& field = a.ring();
  require(field.is_field(), Errc::InvalidRing, "nullspace needs a field");
  std::vector<Vec> work = a.to_rows();
  const std::vector<std::size_t> pivots = reduce_unit_pivots(field, work);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec> kernel;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x(a.cols(), 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = field.neg(work[r][free]);
    kernel.push_back(std::move(x));
  }
  return Matrix::from_rows(field, kernel, a.cols());
}

Subspace annihilator(const Subspace& s) {
  if (s.dim() == 0) return Subspace::whole(s.field(), s.ambient_dim());
  return echelonize(nullspace(s.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), Errc::AmbientMismatch, "subspaces in different ambients");
  return annihilator(span_sum(annihilator(a), annihilator(b)));
}

Subspace FreeSummand::residue_subspace() const { return echelonize(residue(basis_)); }

Vec FreeSummand::full_coordinates(const Vec& v) const {
  require(v.size() == ambient_rank(), Errc::DimensionMismatch, "vector outside the ambient module");
  // Row coordinates x with x * [basis; complement] = v.
  return full_inverse_.transpose() * v;
}

bool FreeSummand::contains(const Vec& v) const {
  const Vec x = full_coordinates(v);
  for (std::size_t i = rank(); i < x.size(); ++i)
    if (x[i] != 0) return false;
  return true;
}

FreeSummand certify_free_summand(const Matrix& rows) {
  const Ring& ring = rows.ring();
  const Subspace res = echelonize(residue(rows));
  if (res.dim() != rows.rows())
    raise(Errc::NotASummand, "residue rows are dependent (residue rank " + std::to_string(res.dim()) + " < " +
                                 std::to_string(rows.rows()) + ")");
  std::vector<bool> is_pivot(rows.cols(), false);
  for (std::size_t c : res.pivots()) is_pivot[c] = true;
  std::vector<Vec> complement;
  for (std::size_t c = 0; c < rows.cols(); ++c)
    if (!is_pivot[c]) complement.push_back(unit_vector(rows.cols(), c));
  Matrix comp = Matrix::from_rows(ring, complement, rows.cols());
  auto full_inverse = inverse(vstack(rows, comp));
  require(full_inverse.has_value(), Errc::InvariantViolation, "summand plus lifted complement is not a basis");
  return FreeSummand(rows, std::move(comp), std::move(*full_inverse));
}

namespace {

struct Reduced {
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
};

Reduced reduce_surjective(const Matrix& a, const Vec* rhs) {
  const Ring& ring = a.ring();
  std::vector<Vec> rows = a.to_rows();
  if (rhs != nullptr) {
    require(rhs->size() == a.rows(), Errc::DimensionMismatch, "right-hand side length mismatch");
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(ring.reduce((*rhs)[i]));
  }
  // Only the coefficient columns may hold pivots.
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !ring.is_unit(rows[pivot][c])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    rows[rank] = scale(ring, rows[rank], ring.inv(rows[rank][c]));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      rows[r] = axpy(ring, rows[r], ring.neg(rows[r][c]), rows[rank]);
    }
    pivots.push_back(c);
    ++rank;
  }
  if (rank != a.rows())
    raise(Errc::NotSurjective, "residue rank " + std::to_string(rank) + " < " + std::to_string(a.rows()));
  return {std::move(rows), std::move(pivots)};
}

}  // namespace

Vec kernel_generator(const Matrix& a) {
  require(a.cols() == a.rows() + 1, Errc::DimensionMismatch, "kernel_generator expects an n x (n+1) matrix");
  const Ring& ring = a.ring();
  const Reduced red = reduce_surjective(a, nullptr);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : red.pivots) is_pivot[c] = true;
  std::size_t free = 0;
  while (is_pivot[free]) ++free;
  Vec w(a.cols(), 0);
  w[free] = 1;
  for (std::size_t r = 0; r < red.pivots.size(); ++r) w[red.pivots[r]] = ring.neg(red.rows[r][free]);
  require(is_zero(a * w), Errc::InvariantViolation, "kernel generator is not in the kernel");
  return w;
}

Vec solve_surjective(const Matrix& a, const Vec& b) {
  const Ring& ring = a.ring();
  Vec target(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) target[i] = ring.reduce(b[i]);
  const Reduced red = reduce_surjective(a, &target);
  Vec x(a.cols(), 0);
  for (std::size_t r = 0; r < red.pivots.size(); ++r) x[red.pivots[r]] = red.rows[r][a.cols()];
  require(a * x == target, Errc::InvariantViolation, "linear solve failed verification");
  return x;
}

}  // namespace isoform
