#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isoform/linalg.hpp"
#include "isoform/quadform.hpp"

namespace isoform {

using Count = std::uint64_t;

/// X: complete flags L_1 < ... < L_j in F_q^n.
/// X_iso: such flags with every L_i totally isotropic.
/// Y_iso: totally isotropic j-dimensional subspaces.
/// Z_strata: maximal isotropic W of a split 2m-space, split by dim(W ∩ P).
enum class Family { X, X_iso, Y_iso, Z_strata };

Family parse_family(std::string_view name);
std::string_view to_string(Family family);

/// Closed-form dimension of the variety; for Z_strata (ambient n = 2m,
/// stratum j) the upper bound dim(Y_iso(2m, m)) - (j^2 - j). Throws OutOfRange.
int predicted_dimension(Family family, std::size_t n, std::size_t j);

/// Split non-degenerate form used by the census: H^{n/2}, or H^{(n-1)/2} + <1>.
GramForm split_form(const Ring& field, std::size_t n);

/// Streams every totally isotropic j-dimensional subspace exactly once, in a
/// deterministic order (pivot sets lexicographically, then depth-first over
/// the echelon rows). Stops early when `visit` returns false.
void enumerate_isotropic_subspaces(const GramForm& q, std::size_t j,
                                   const std::function<bool(const Subspace&)>& visit);
std::vector<Subspace> isotropic_subspaces(const GramForm& q, std::size_t j);

/// Number of projective points x in F_q^n (counted by enumeration) with Q(x) = 0
/// when `q` is given, otherwise all of them.
Count count_projective_points(const Ring& field, std::size_t n);
Count count_isotropic_lines(const GramForm& q);

enum class CountMethod {
  fiberwise,   ///< project along the flag fibrations and multiply fiber counts
  exhaustive,  ///< enumerate every flag / subspace
};

/// Exact count of the family over F_q for ambient dimension n using the split
/// form. Throws BudgetExceeded when the chosen method is out of range.
Count count_flags(Family family, std::size_t n, std::size_t j, Int q, CountMethod method = CountMethod::fiberwise);

/// Partition of the maximal isotropic subspaces of q by dim(W ∩ P).
struct StrataCount {
  std::map<std::size_t, Count> strata;
  Count total = 0;
};
StrataCount count_strata(const GramForm& q, const Subspace& p);

/// Random (n+1)-dimensional subspace of F_q^{2n} with non-degenerate restriction.
Subspace random_nondegenerate_subspace(const GramForm& q, std::size_t dim, std::uint64_t seed);

/// Integer degree d fitted to counts over several primes, assuming the counts
/// are a polynomial in q with non-negative integer coefficients. The
/// candidate is d = floor(log_q count) at the largest prime. It is accepted
/// only if count >= q^d at every prime (degree at least d) and count / q^d
/// does not increase with q (degree at most d). nullopt means insufficient
/// data.
std::optional<int> fit_degree(const std::map<Int, Count>& counts);

struct CensusReport {
  Family family;
  std::size_t n;  ///< ambient dimension
  std::size_t j;
  std::map<Int, Count> counts;
  int predicted_dim;
  std::optional<int> fitted_degree;
};

CensusReport census(Family family, std::size_t n, std::size_t j, const std::vector<Int>& primes,
                    CountMethod method = CountMethod::fiberwise);

/// Z_j census for a split 2m-space: one report per stratum j, P drawn per
/// prime from `seed`.
std::vector<CensusReport> census_strata(std::size_t dim2n, const std::vector<Int>& primes, std::uint64_t seed);

/// CSV with header family,n,j,q,count,predicted_dim,fitted_degree.
std::string to_csv(const std::vector<CensusReport>& reports);

}  // namespace isoform
