#pragma once

#include <cstddef>
#include <vector>

#include "isoform/matrix.hpp"

namespace isoform {

/// In-place Gauss-Jordan on `rows` using only unit pivots; columns with no
/// unit candidate are skipped. Returns the pivot column of each leading row.
/// Over a field this is the reduced row-echelon form.
std::vector<std::size_t> reduce_unit_pivots(const Ring& ring, std::vector<Vec>& rows);

/// A subspace of F_p^n, stored by its reduced row-echelon basis, which is the
/// canonical representative: two subspaces are equal iff their bases are.
class Subspace {
 public:
  static Subspace zero(const Ring& field, std::size_t ambient_dim);
  static Subspace whole(const Ring& field, std::size_t ambient_dim);

  const Ring& field() const noexcept { return basis_.ring(); }
  const Matrix& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const Vec& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept { return a.basis_ == b.basis_; }

 private:
  friend Subspace echelonize(const Matrix& rows);
  Subspace(Matrix basis, std::vector<std::size_t> pivots) : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Canonical RREF basis of the row span. The matrix must live over a field.
Subspace echelonize(const Matrix& rows);

Subspace span_sum(const Subspace& a, const Subspace& b);
/// {x : x . s = 0 for every s in the subspace} under the standard dot product.
Subspace annihilator(const Subspace& s);
/// Basis (as rows) of the right kernel {x : A x = 0} over a field.
Matrix nullspace(const Matrix& a);
/// A ∩ B computed as ann(ann(A) + ann(B)).
Subspace intersect(const Subspace& a, const Subspace& b);

/// A free direct summand of (Z/p^k)^n of rank r, given by r basis rows whose
/// residues are independent over F_p.
class FreeSummand {
 public:
  const Ring& ring() const noexcept { return basis_.ring(); }
  const Matrix& basis() const noexcept { return basis_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  std::size_t ambient_rank() const noexcept { return basis_.cols(); }

  /// Lifted residue complement: rows such that basis followed by complement is
  /// an invertible n x n matrix.
  const Matrix& complement() const noexcept { return complement_; }
  /// The residue subspace of F_p^n.
  Subspace residue_subspace() const;
  /// Coordinates of v in the basis (basis rows, then complement rows).
  Vec full_coordinates(const Vec& v) const;
  bool contains(const Vec& v) const;

 private:
  friend FreeSummand certify_free_summand(const Matrix& rows);
  FreeSummand(Matrix basis, Matrix complement, Matrix full_inverse)
      : basis_(std::move(basis)), complement_(std::move(complement)), full_inverse_(std::move(full_inverse)) {}

  Matrix basis_;
  Matrix complement_;
  Matrix full_inverse_;
};

/// Succeeds iff the residue rows are independent; throws NotASummand otherwise.
FreeSummand certify_free_summand(const Matrix& rows);

/// For A of shape n x (n+1) with residue rank n, a vector w with A w = 0 and
/// nonzero residue, generating the rank-one kernel. Throws NotSurjective.
Vec kernel_generator(const Matrix& a);

/// Some x with A x = b for A of full residue row rank (free variables set to
/// zero). Throws NotSurjective.
Vec solve_surjective(const Matrix& a, const Vec& b);

}  // namespace isoform
