#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "isoform/error.hpp"
#include "isoform/flagcount.hpp"
#include "isoform/linalg.hpp"
#include "isoform/witt.hpp"

namespace isoform {

/// Raised when no maximal isotropic W meets P in a line. When the residue
/// field was small enough to enumerate, `strata` holds the complete census
/// {dim(W ∩ P) -> count} proving it; otherwise it is empty and only the
/// search budget ran out.
class ExhaustedError : public Error {
 public:
  ExhaustedError(const std::string& message, std::map<std::size_t, Count> strata, bool proven)
      : Error(Errc::Exhausted, message), strata_(std::move(strata)), proven_(proven) {}

  const std::map<std::size_t, Count>& strata() const noexcept { return strata_; }
  bool proven() const noexcept { return proven_; }

 private:
  std::map<std::size_t, Count> strata_;
  bool proven_;
};

/// Field layer: W is a Subspace of F_p^{2n}. Ring layer: W is a free summand
/// of (Z/p^k)^{2n} given by `basis` rows.
struct LagrangianResult {
  Matrix basis;                  ///< rows spanning W
  std::size_t meet_dim = 0;      ///< dim(W ∩ P), or rank of W ∩ N
  std::optional<Vec> generator;  ///< spans W ∩ P (or W ∩ N) when meet_dim == 1
  std::size_t attempts = 0;      ///< random isometries tried before success
  bool used_enumeration = false;
};

/// Completes the echelon basis w_1..w_n of a Lagrangian W of a rank-2n form
/// to a hyperbolic basis {(w_i, f_i)}. Throws WrongDimension, NotIsotropic.
HyperbolicBasis complete_hyperbolic_dual(const GramForm& q, const Subspace& w);

/// Over F_p: a maximal totally isotropic W with dim(W ∩ P) = 1, searched on
/// the orbit of the standard Lagrangian under random reflection products
/// (64 n attempts), then by enumeration when that is affordable.
/// Throws Degenerate if Q|_P is degenerate, NotHyperbolic if Q is not split,
/// and ExhaustedError when the search fails.
LagrangianResult find_meeting_lagrangian(const GramForm& q, const Subspace& p, std::uint64_t seed);

/// Over Z/p^k: given Q with hyperbolic residue and a free summand N of rank
/// n+1 with Q|_N non-degenerate, a free totally isotropic summand W of rank n
/// and a unimodular isotropic generator of W ∩ N.
struct ModuleConstruction {
  LagrangianResult result;          ///< basis rows of W over the ring; generator w
  Subspace residue_lagrangian;      ///< the residue-field W̄ chosen in the search
  HyperbolicBasis local_basis;      ///< hyperbolic basis of M over the ring
  Isometry lifted;                  ///< A in O(M) with A(e_i) spanning W
  Vec kernel_coefficients;          ///< coordinates of w in N's basis
};
ModuleConstruction prop_mod_construct(const GramForm& q, const FreeSummand& n, std::uint64_t seed);

/// Independent check of the three postconditions: W totally isotropic,
/// residue rows independent with dim(W̄ ∩ N̄) = 1, and the generator is
/// isotropic, unimodular and lies in N. Returns an empty string on success.
std::string verify_module_construction(const GramForm& q, const FreeSummand& n, const ModuleConstruction& c);

}  // namespace isoform
