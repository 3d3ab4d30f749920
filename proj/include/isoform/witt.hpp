#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "isoform/quadform.hpp"
#include "isoform/random.hpp"

namespace isoform {

/// An invertible A with A^T G A = G, acting on column vectors. The equation is
/// checked on construction.
class Isometry {
 public:
  Isometry(Matrix a, GramForm form);
  static Isometry identity(const GramForm& form);

  const Matrix& matrix() const noexcept { return a_; }
  const GramForm& form() const noexcept { return form_; }
  Vec apply(const Vec& v) const { return a_ * v; }
  /// (*this) o other
  Isometry then_after(const Isometry& other) const;

 private:
  Matrix a_;
  GramForm form_;
};

struct HyperbolicPair {
  Vec e;
  Vec f;
};

/// Pairs (e_i, f_i) with Q(e_i) = Q(f_i) = 0, B(e_i, f_j) = delta_ij and
/// B(e_i, e_j) = B(f_i, f_j) = 0.
struct HyperbolicBasis {
  std::vector<HyperbolicPair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool verify(const GramForm& q) const;
  /// Columns e_1, ..., e_n, f_1, ..., f_n.
  Matrix frame(const Ring& ring, std::size_t ambient) const;
};

/// r_u(v) = v - 2 B(u,v) B(u,u)^{-1} u. Throws NonUnitNorm unless Q(u) is a unit.
Isometry reflection(const GramForm& q, const Vec& u);
Vec reflect(const GramForm& q, const Vec& u, const Vec& v);
/// Product r_{u_1} o ... o r_{u_t} as a matrix.
Matrix compose_reflections(const GramForm& q, const std::vector<Vec>& vectors);

/// A random vector with unit norm.
Vec random_anisotropic_vector(const GramForm& q, Rng& rng);

/// Nonzero v with Q(v) = 0 over a field, or nullopt when Q is anisotropic
/// (only possible for rank <= 2). Exhaustive projective scan when
/// p^rank <= 10^6, otherwise random sampling followed by a deterministic
/// solve on three diagonal coordinates. Throws Degenerate.
std::optional<Vec> find_isotropic_vector(const GramForm& q, std::uint64_t seed = 0);

struct HyperbolicSplit {
  HyperbolicPair pair;
  Matrix complement;  ///< rows spanning (e, f)^perp; restricted form non-degenerate
};

/// Completes an isotropic unimodular v to a hyperbolic pair (v, f) and returns
/// a basis of the orthogonal complement of the plane. Works over F_p and Z/p^k.
HyperbolicSplit split_hyperbolic(const GramForm& q, const Vec& v);

struct WittDecomposition {
  std::size_t index = 0;
  HyperbolicBasis hyperbolic;
  Matrix anisotropic_basis;  ///< rows, in ambient coordinates
  GramForm anisotropic;      ///< form restricted to anisotropic_basis

  bool is_hyperbolic() const noexcept { return anisotropic.rank() == 0; }
};

/// Witt decomposition over a field by repeated isotropic search and splitting.
WittDecomposition witt_decompose(const GramForm& q, std::uint64_t seed = 0);

/// Over Z/p^k: isotropic vectors are found on the residue form and
/// Hensel-lifted before splitting, so the index equals the residue index.
WittDecomposition witt_decompose_local(const GramForm& q, std::uint64_t seed = 0);

/// Factors an isometry into at most 2 * rank reflections with unit norms:
/// A = r_{u_1} o ... o r_{u_t}. Works over fields and over Z/p^k.
std::vector<Vec> cartan_dieudonne(const Isometry& a);

/// Lifts an isometry of the residue form to one of q over Z/p^k by factoring
/// it into reflections and lifting each reflection vector.
Isometry lift_isometry(const Isometry& residue_isometry, const GramForm& q);

/// Newton iteration v <- v - Q(v) (2 B(v, d))^{-1} d from the canonical lift
/// of an isotropic residue vector; returns v with Q(v) = 0 exactly.
Vec hensel_lift_isotropic(const GramForm& q, const Vec& residue_vector);

}  // namespace isoform
