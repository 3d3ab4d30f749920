#include "isoform/quadform.hpp"

#include <utility>

#include "isoform/error.hpp"

namespace isoform {

GramForm::GramForm(Matrix gram) : gram_(std::move(gram)) {
  require(gram_.is_square(), Errc::DimensionMismatch, "Gram matrix must be square");
  require(gram_.is_symmetric(), Errc::DimensionMismatch, "Gram matrix must be symmetric");
}

GramForm GramForm::diagonal(const Ring& ring, const Vec& coefficients) {
  return GramForm(Matrix::diagonal(ring, coefficients));
}

GramForm GramForm::hyperbolic_plane(const Ring& ring) {
  return GramForm(Matrix::from_rows(ring, {{0, 1}, {1, 0}}));
}

GramForm GramForm::hyperbolic(const Ring& ring, std::size_t planes) {
  Matrix g(ring, 2 * planes, 2 * planes);
  for (std::size_t i = 0; i < planes; ++i) {
    g.set(2 * i, 2 * i + 1, 1);
    g.set(2 * i + 1, 2 * i, 1);
  }
  return GramForm(std::move(g));
}

bool GramForm::is_diagonal() const noexcept {
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (i != j && gram_(i, j) != 0) return false;
  return true;
}

Vec GramForm::diagonal_entries() const {
  Vec d(rank());
  for (std::size_t i = 0; i < rank(); ++i) d[i] = gram_(i, i);
  return d;
}

Vec polar(const GramForm& q, const Vec& v) {
  require(v.size() == q.rank(), Errc::DimensionMismatch, "vector length does not match form rank");
  return q.gram() * v;
}

Int eval_quad(const GramForm& q, const Vec& v) { return eval_bilinear(q, v, v); }

Int eval_bilinear(const GramForm& q, const Vec& u, const Vec& v) {
  require(u.size() == q.rank() && v.size() == q.rank(), Errc::DimensionMismatch,
          "vector length does not match form rank");
  return dot(q.ring(), u, q.gram() * v);
}

bool is_nondegenerate(const GramForm& q) { return is_invertible_matrix(q.gram()); }

GramForm residue(const GramForm& q) { return GramForm(residue(q.gram())); }

GramForm lift(const GramForm& q, const Ring& target) { return GramForm(lift(q.gram(), target)); }

Diagonalization diagonalize(const GramForm& q) {
  require(is_nondegenerate(q), Errc::Degenerate, "diagonalize needs a non-degenerate form");
  const Ring& ring = q.ring();
  const std::size_t n = q.rank();
  // Columns of `basis` are the working basis; `g` is the Gram matrix in it.
  std::vector<Vec> basis = Matrix::identity(ring, n).to_rows();
  std::vector<Vec> g = q.gram().to_rows();

  auto recompute = [&](std::size_t from) {
    for (std::size_t i = from; i < n; ++i)
      for (std::size_t j = from; j < n; ++j) g[i][j] = eval_bilinear(q, basis[i], basis[j]);
  };

  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t i = c; i < n && pivot == n; ++i)
      if (ring.is_unit(g[i][i])) pivot = i;
    if (pivot == n) {
      // No unit norm left: some B(b_i, b_j) with i != j is a unit because the
      // remaining block is non-degenerate.
      for (std::size_t i = c; i < n && pivot == n; ++i)
        for (std::size_t j = c; j < n && pivot == n; ++j)
          if (i != j && ring.is_unit(g[i][j])) {
            basis[i] = add(ring, basis[i], basis[j]);
            recompute(c);
            pivot = i;
          }
      require(pivot < n, Errc::InvariantViolation, "no unit pivot in a non-degenerate block");
    }
    std::swap(basis[c], basis[pivot]);
    recompute(c);
    const Int norm_inv = ring.inv(g[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (g[i][c] == 0) continue;
      basis[i] = axpy(ring, basis[i], ring.neg(ring.mul(g[i][c], norm_inv)), basis[c]);
    }
    recompute(c);
  }

  Matrix transform = Matrix::from_columns(ring, basis, n);
  Vec diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = g[i][i];
  GramForm d = GramForm::diagonal(ring, diag);
  require(transform.transpose() * q.gram() * transform == d.gram(), Errc::InvariantViolation,
          "diagonalization round-trip failed");
  return {std::move(d), std::move(transform)};
}

GramForm direct_sum(const GramForm& a, const GramForm& b) {
  return GramForm(block_diagonal(a.gram(), b.gram()));
}

GramForm tensor(const GramForm& a, const GramForm& b) { return GramForm(kronecker(a.gram(), b.gram())); }

GramForm restrict_to(const GramForm& q, const Matrix& basis) {
  require(basis.cols() == q.rank(), Errc::DimensionMismatch, "basis width does not match form rank");
  require(basis.ring() == q.ring(), Errc::RingMismatch, "basis and form live over different rings");
  return GramForm(basis * q.gram() * basis.transpose());
}

PfisterSpec::PfisterSpec(const Ring& ring, Vec slots) : ring_(ring), slots_(std::move(slots)) {
  require(!slots_.empty(), Errc::OutOfRange, "a Pfister form needs at least one slot");
  require(slots_.size() < 20, Errc::OutOfRange, "too many Pfister slots");
  for (Int& a : slots_) {
    a = ring_.reduce(a);
    require(ring_.is_unit(a), Errc::NonUnitSlot, "Pfister slot " + std::to_string(a) + " is not a unit");
  }
}

PfisterSpec PfisterSpec::over(const Ring& ring) const {
  require(ring.p() == ring_.p(), Errc::RingMismatch, "Pfister spec moved to a ring with a different prime");
  return PfisterSpec(ring, slots_);
}

GramForm pfister_expand(const PfisterSpec& spec) {
  const Ring& ring = spec.ring();
  GramForm q = GramForm::diagonal(ring, {1});
  for (Int a : spec.slots()) q = tensor(GramForm::diagonal(ring, {1, ring.neg(a)}), q);
  return q;
}

}  // namespace isoform
