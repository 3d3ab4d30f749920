#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isoform/quadform.hpp"
#include "isoform/witt.hpp"

namespace isoform {

/// Diagonal coefficients alpha_1..alpha_n and a solution of
/// alpha_1 t_1^2 + ... + alpha_{n-1} t_{n-1}^2 = -alpha_n  ->  (t, 1), a
/// unimodular zero of sum alpha_i t_i^2. Requires n > 2.
Vec lemma_tech_forward(const Ring& ring, const Vec& alphas, const Vec& sol);

/// Inverse direction: a unimodular zero v of sum alpha_i t_i^2 becomes a
/// solution of the (n-1)-variable equation. When v_n is not a unit, one
/// reflection moves v to a zero with unit last coordinate.
/// Throws NoDeflection if no reflection vector exists over the residue field.
Vec lemma_tech_reduce(const Ring& ring, const Vec& alphas, const Vec& v, std::uint64_t seed = 0);

struct RepresentationProblem {
  PfisterSpec spec;
  Int c;
};

enum class Verdict { solved, no_solution, inconclusive };
std::string_view to_string(Verdict v);

struct TraceEntry {
  std::string stage;
  std::string detail;
};

struct SolutionCertificate {
  Verdict verdict = Verdict::inconclusive;
  std::optional<Vec> witness;
  std::vector<TraceEntry> trace;
  std::optional<WittDecomposition> residue_witt;  ///< decomposition of the residue of <1,-c> ⊗ Q
};

struct SolveOptions {
  bool fast_paths = true;
};

/// Residue test for <1,-c> ⊗ Q: a positive anisotropic rank certifies that
/// Q = c has no solution. Returns the decomposition used as transcript.
WittDecomposition residue_obstruction(const GramForm& twisted, std::uint64_t seed);

/// Solves Q(x) = c for the Pfister form of the spec. A solved certificate's
/// witness always re-evaluates to c exactly (checked before returning).
SolutionCertificate solve_pfister(const RepresentationProblem& problem, std::uint64_t seed = 0,
                                  SolveOptions options = {});

struct GroupLawReport {
  std::size_t trials = 0;
  std::size_t closure_checks = 0;
  std::size_t inverse_checks = 0;
  std::size_t identity_checks = 0;
  std::size_t inconclusive = 0;
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Randomized check that the represented units form a subgroup: products,
/// inverses (with the witness c^-1 v) and 1.
GroupLawReport check_group_law(const PfisterSpec& spec, std::size_t trials, std::uint64_t seed,
                               SolveOptions options = {});

}  // namespace isoform
