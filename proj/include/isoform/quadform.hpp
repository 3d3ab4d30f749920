#pragma once

#include <cstddef>
#include <vector>

#include "isoform/matrix.hpp"
#include "isoform/ring.hpp"

namespace isoform {

/// A quadratic space given by a symmetric Gram matrix G. Conventions:
/// Q(v) = v^T G v and B(u, v) = u^T G v, so B(v, v) = Q(v). The hyperbolic
/// plane is G = [[0,1],[1,0]] with Q(xe + yf) = 2xy.
class GramForm {
 public:
  /// Throws DimensionMismatch unless the matrix is square and symmetric.
  explicit GramForm(Matrix gram);

  static GramForm diagonal(const Ring& ring, const Vec& coefficients);
  static GramForm hyperbolic_plane(const Ring& ring);
  /// Orthogonal sum of `planes` hyperbolic planes, in (e_1, f_1, e_2, f_2, ...) order.
  static GramForm hyperbolic(const Ring& ring, std::size_t planes);

  const Ring& ring() const noexcept { return gram_.ring(); }
  const Matrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return gram_.rows(); }

  bool is_diagonal() const noexcept;
  /// Diagonal entries; only meaningful for diagonal forms.
  Vec diagonal_entries() const;

  friend bool operator==(const GramForm& a, const GramForm& b) noexcept { return a.gram_ == b.gram_; }

 private:
  Matrix gram_;
};

Int eval_quad(const GramForm& q, const Vec& v);
Int eval_bilinear(const GramForm& q, const Vec& u, const Vec& v);
/// G v, the coefficient vector of the functional B(v, .).
Vec polar(const GramForm& q, const Vec& v);

/// det(G) is a unit. Over Z/p^k this is non-degeneracy of the residue form.
bool is_nondegenerate(const GramForm& q);

/// The form reduced to the residue field.
GramForm residue(const GramForm& q);
GramForm lift(const GramForm& q, const Ring& target);

struct Diagonalization {
  GramForm diagonal;  ///< D = T^T G T, every diagonal entry a unit
  Matrix transform;   ///< T, columns are an orthogonal basis
};

/// Symmetric Gram-Schmidt with unit pivots. When no diagonal entry of the
/// remaining block is a unit, an off-diagonal unit B(b_i, b_j) is turned into
/// a unit norm by b_i <- b_i + b_j (valid because 2 is invertible).
/// Throws Degenerate if det(G) is not a unit.
Diagonalization diagonalize(const GramForm& q);

GramForm direct_sum(const GramForm& a, const GramForm& b);
/// Row-major Kronecker product: diagonal inputs give <a_i b_j> with the index
/// of `b` varying fastest.
GramForm tensor(const GramForm& a, const GramForm& b);

/// Restriction to the span of the rows of `basis`: Gram = S G S^T.
GramForm restrict_to(const GramForm& q, const Matrix& basis);

/// The m-fold Pfister form <<a_1, ..., a_m>> = <1,-a_m> (x) ... (x) <1,-a_1>.
/// Coordinate s of the expansion carries the product of -a_i over the set
/// bits i of s, so coordinate 0 has coefficient 1.
class PfisterSpec {
 public:
  /// Throws NonUnitSlot if a slot is not a unit, OutOfRange if empty.
  PfisterSpec(const Ring& ring, Vec slots);

  const Ring& ring() const noexcept { return ring_; }
  const Vec& slots() const noexcept { return slots_; }
  std::size_t folds() const noexcept { return slots_.size(); }
  std::size_t dimension() const noexcept { return std::size_t{1} << slots_.size(); }

  /// Same slots read into another ring with the same p (residue or lift).
  PfisterSpec over(const Ring& ring) const;

 private:
  Ring ring_;
  Vec slots_;
};

GramForm pfister_expand(const PfisterSpec& spec);

}  // namespace isoform
