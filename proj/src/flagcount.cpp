#include "isoform/flagcount.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "isoform/error.hpp"
#include "isoform/parallel.hpp"
#include "isoform/random.hpp"
#include "isoform/witt.hpp"
#include "projective.hpp"

namespace isoform {

namespace {

constexpr Count kLeafBudget = 20'000'000;
constexpr std::size_t kMaxAmbient = 12;

Count checked_mul(Count a, Count b) {
  Count out;
  if (__builtin_mul_overflow(a, b, &out)) raise(Errc::BudgetExceeded, "count exceeds 64 bits");
  return out;
}

struct AffineSolution {
  Vec particular;
  std::vector<Vec> directions;
};

// Solutions of A x = b over a field, or nullopt when inconsistent.
std::optional<AffineSolution> solve_affine(const Ring& field, const std::vector<Vec>& a, const Vec& b,
                                           std::size_t unknowns) {
  if (a.empty()) {
    AffineSolution all{Vec(unknowns, 0), {}};
    for (std::size_t i = 0; i < unknowns; ++i) all.directions.push_back(unit_vector(unknowns, i));
    return all;
  }
  std::vector<Vec> aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  const std::vector<std::size_t> pivots = reduce_unit_pivots(field, aug);
  if (!pivots.empty() && pivots.back() == unknowns) return std::nullopt;
  AffineSolution sol{Vec(unknowns, 0), {}};
  std::vector<bool> is_pivot(unknowns, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    sol.particular[pivots[r]] = aug[r][unknowns];
  }
  for (std::size_t free = 0; free < unknowns; ++free) {
    if (is_pivot[free]) continue;
    Vec d(unknowns, 0);
    d[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) d[pivots[r]] = field.neg(aug[r][free]);
    sol.directions.push_back(std::move(d));
  }
  return sol;
}

template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return false;
  for (;;) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

class IsotropicEnumerator {
 public:
  IsotropicEnumerator(const GramForm& q, std::size_t j, const std::function<bool(const Subspace&)>& visit)
      : q_(q), field_(q.ring()), n_(q.rank()), j_(j), visit_(visit) {}

  void run() {
    if (j_ == 0) {
      visit_(Subspace::zero(field_, n_));
      return;
    }
    for_each_combination(n_, j_, [&](const std::vector<std::size_t>& pivots) {
      pivots_ = pivots;
      rows_.assign(j_, Vec());
      polars_.assign(j_, Vec());
      return !descend(0);
    });
  }

 private:
  // Returns false when the visitor requested a stop.
  bool descend(std::size_t i) {
    if (i == j_) return visit_(echelonize(Matrix::from_rows(field_, rows_)));
    const std::size_t pivot = pivots_[i];
    std::vector<std::size_t> free;
    for (std::size_t c = pivot + 1; c < n_; ++c)
      if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) free.push_back(c);

    // Orthogonality to earlier rows is linear in the free entries.
    std::vector<Vec> a(i, Vec(free.size()));
    Vec b(i);
    for (std::size_t r = 0; r < i; ++r) {
      for (std::size_t t = 0; t < free.size(); ++t) a[r][t] = polars_[r][free[t]];
      b[r] = field_.neg(polars_[r][pivot]);
    }
    const auto sol = solve_affine(field_, a, b, free.size());
    if (!sol) return true;

    const std::size_t dims = sol->directions.size();
    Vec coeffs(dims, 0);
    for (;;) {
      Vec x = sol->particular;
      for (std::size_t d = 0; d < dims; ++d)
        if (coeffs[d] != 0) x = axpy(field_, x, coeffs[d], sol->directions[d]);
      Vec row(n_, 0);
      row[pivot] = 1;
      for (std::size_t t = 0; t < free.size(); ++t) row[free[t]] = x[t];
      if (eval_quad(q_, row) == 0) {
        polars_[i] = polar(q_, row);
        rows_[i] = std::move(row);
        if (!descend(i + 1)) return false;
      }
      std::size_t d = dims;
      bool carry = true;
      while (carry && d > 0) {
        --d;
        if (++coeffs[d] < field_.p()) {
          carry = false;
        } else {
          coeffs[d] = 0;
        }
      }
      if (carry) break;
    }
    return true;
  }

  const GramForm& q_;
  Ring field_;
  std::size_t n_;
  std::size_t j_;
  const std::function<bool(const Subspace&)>& visit_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> rows_;
  std::vector<Vec> polars_;
};

// Extends a basis of `inner` to a basis of `outer` (inner inside outer);
// returns only the added vectors.
std::vector<Vec> relative_complement(const Subspace& inner, const Subspace& outer) {
  std::vector<Vec> rows = inner.basis().to_rows();
  std::vector<Vec> added;
  std::size_t rank = inner.dim();
  for (std::size_t i = 0; i < outer.dim(); ++i) {
    rows.push_back(outer.basis().row(i));
    const std::size_t r = echelonize(Matrix::from_rows(inner.field(), rows)).dim();
    if (r > rank) {
      rank = r;
      added.push_back(outer.basis().row(i));
    } else {
      rows.pop_back();
    }
  }
  return added;
}

Vec combine(const Ring& field, const std::vector<Vec>& basis, const Vec& coeffs, std::size_t n) {
  Vec x(n, 0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i] != 0) x = axpy(field, x, coeffs[i], basis[i]);
  return x;
}

// Complete flags of length j extending `current` inside F_q^n.
void walk_flags(const Subspace& current, std::size_t remaining, Count& leaves) {
  if (remaining == 0) {
    if (++leaves > kLeafBudget) raise(Errc::BudgetExceeded, "flag enumeration exceeds the leaf budget");
    return;
  }
  const Ring& field = current.field();
  const std::size_t n = current.ambient_dim();
  const std::vector<Vec> comp = relative_complement(current, Subspace::whole(field, n));
  detail::scan_projective(comp.size(), field.p(), [&](const Vec& y) {
    const Vec x = combine(field, comp, y, n);
    walk_flags(span_sum(current, echelonize(Matrix::from_rows(field, {x}))), remaining - 1, leaves);
    return false;
  });
}

// Totally isotropic complete flags extending the isotropic `current`.
void walk_isotropic_flags(const GramForm& q, const Subspace& current, std::size_t remaining, Count& leaves) {
  if (remaining == 0) {
    if (++leaves > kLeafBudget) raise(Errc::BudgetExceeded, "flag enumeration exceeds the leaf budget");
    return;
  }
  const Ring& field = q.ring();
  const std::size_t n = q.rank();
  // current^perp = annihilator of the rows G L_i.
  const Subspace perp =
      current.dim() == 0 ? Subspace::whole(field, n) : annihilator(echelonize(current.basis() * q.gram()));
  const std::vector<Vec> comp = relative_complement(current, perp);
  detail::scan_projective(comp.size(), field.p(), [&](const Vec& y) {
    const Vec x = combine(field, comp, y, n);
    if (eval_quad(q, x) == 0)
      walk_isotropic_flags(q, span_sum(current, echelonize(Matrix::from_rows(field, {x}))), remaining - 1, leaves);
    return false;
  });
}

Count count_x_fiberwise(const Ring& field, std::size_t n, std::size_t j) {
  Count total = 1;
  for (std::size_t i = 0; i < j; ++i) total = checked_mul(total, count_projective_points(field, n - i));
  return total;
}

Count count_x_iso_fiberwise(const GramForm& q, std::size_t j) {
  if (j == 0) return 1;
  const Count lines = count_isotropic_lines(q);
  if (lines == 0) return 0;
  const auto v = find_isotropic_vector(q);
  require(v.has_value(), Errc::InvariantViolation, "isotropic lines counted but none found");
  const HyperbolicSplit split = split_hyperbolic(q, *v);
  return checked_mul(lines, count_x_iso_fiberwise(restrict_to(q, split.complement), j - 1));
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "x" || name == "X") return Family::X;
  if (name == "x-iso" || name == "X_iso") return Family::X_iso;
  if (name == "y-iso" || name == "Y_iso") return Family::Y_iso;
  if (name == "z" || name == "z-strata" || name == "Z_strata") return Family::Z_strata;
  raise(Errc::Parse, "unknown family '" + std::string(name) + "' (expected x, x-iso, y-iso, z)");
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::X: return "x";
    case Family::X_iso: return "x-iso";
    case Family::Y_iso: return "y-iso";
    case Family::Z_strata: return "z";
  }
  return "?";
}

int predicted_dimension(Family family, std::size_t n, std::size_t j) {
  const int nn = static_cast<int>(n);
  const int jj = static_cast<int>(j);
  switch (family) {
    case Family::X:
      require(j >= 1 && j <= n, Errc::OutOfRange, "X needs 1 <= j <= n");
      return nn * jj - jj * (jj + 1) / 2;
    case Family::X_iso:
      require(n >= 2 && j >= 1 && j <= n / 2, Errc::OutOfRange, "X_iso needs 1 <= j <= n/2");
      return nn * jj - jj * (jj + 1);
    case Family::Y_iso:
      require(n >= 2 && j >= 1 && j <= n / 2, Errc::OutOfRange, "Y_iso needs 1 <= j <= n/2");
      return nn * jj - jj * (jj + 1) - jj * (jj - 1) / 2;
    case Family::Z_strata: {
      require(n >= 2 && n % 2 == 0, Errc::OutOfRange, "Z strata need an even ambient dimension");
      const std::size_t m = n / 2;
      require(j >= 1 && j <= (m + 1) / 2, Errc::OutOfRange, "Z stratum index out of range");
      return predicted_dimension(Family::Y_iso, n, m) - (jj * jj - jj);
    }
  }
  raise(Errc::OutOfRange, "unknown family");
}

GramForm split_form(const Ring& field, std::size_t n) {
  GramForm q = GramForm::hyperbolic(field, n / 2);
  if (n % 2 == 1) q = direct_sum(q, GramForm::diagonal(field, {1}));
  return q;
}

void enumerate_isotropic_subspaces(const GramForm& q, std::size_t j,
                                   const std::function<bool(const Subspace&)>& visit) {
  require(q.ring().is_field(), Errc::InvalidRing, "enumeration works over a field");
  require(is_nondegenerate(q), Errc::Degenerate, "enumeration needs a non-degenerate form");
  require(j <= q.rank(), Errc::OutOfRange, "subspace dimension exceeds the ambient");
  IsotropicEnumerator(q, j, visit).run();
}

std::vector<Subspace> isotropic_subspaces(const GramForm& q, std::size_t j) {
  std::vector<Subspace> out;
  enumerate_isotropic_subspaces(q, j, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

Count count_projective_points(const Ring& field, std::size_t n) {
  Count total = 0;
  detail::scan_projective(n, field.p(), [&](const Vec&) {
    ++total;
    return false;
  });
  return total;
}

Count count_isotropic_lines(const GramForm& q) {
  Count total = 0;
  detail::scan_projective(q.rank(), q.ring().p(), [&](const Vec& v) {
    if (eval_quad(q, v) == 0) ++total;
    return false;
  });
  return total;
}

Count count_flags(Family family, std::size_t n, std::size_t j, Int q, CountMethod method) {
  require(family != Family::Z_strata, Errc::OutOfRange, "use count_strata for the Z family");
  require(n <= kMaxAmbient, Errc::BudgetExceeded, "ambient dimension above the enumeration budget");
  predicted_dimension(family, n, j);  // range check
  const Ring field = Ring::prime_field(q);
  switch (family) {
    case Family::X: {
      if (method == CountMethod::fiberwise) return count_x_fiberwise(field, n, j);
      Count leaves = 0;
      walk_flags(Subspace::zero(field, n), j, leaves);
      return leaves;
    }
    case Family::X_iso: {
      const GramForm form = split_form(field, n);
      if (method == CountMethod::fiberwise) return count_x_iso_fiberwise(form, j);
      Count leaves = 0;
      walk_isotropic_flags(form, Subspace::zero(field, n), j, leaves);
      return leaves;
    }
    case Family::Y_iso: {
      const GramForm form = split_form(field, n);
      if (method == CountMethod::fiberwise) {
        // Each isotropic L carries |X^L_{j-1}| complete flags ending in it.
        const Count flags = count_x_iso_fiberwise(form, j);
        const Count fibre = count_x_fiberwise(field, j, j - 1);
        require(flags % fibre == 0, Errc::InvariantViolation, "isotropic flag count not divisible by the fibre");
        return flags / fibre;
      }
      Count total = 0;
      enumerate_isotropic_subspaces(form, j, [&](const Subspace&) {
        if (++total > kLeafBudget) raise(Errc::BudgetExceeded, "subspace enumeration exceeds the budget");
        return true;
      });
      return total;
    }
    case Family::Z_strata: break;
  }
  raise(Errc::OutOfRange, "unknown family");
}

StrataCount count_strata(const GramForm& q, const Subspace& p) {
  require(q.rank() % 2 == 0, Errc::WrongDimension, "strata need an even-rank form");
  require(p.ambient_dim() == q.rank(), Errc::AmbientMismatch, "P lives in a different ambient");
  StrataCount out;
  enumerate_isotropic_subspaces(q, q.rank() / 2, [&](const Subspace& w) {
    ++out.strata[intersect(w, p).dim()];
    if (++out.total > kLeafBudget) raise(Errc::BudgetExceeded, "Lagrangian enumeration exceeds the budget");
    return true;
  });
  return out;
}

Subspace random_nondegenerate_subspace(const GramForm& q, std::size_t dim, std::uint64_t seed) {
  require(dim <= q.rank(), Errc::OutOfRange, "subspace dimension exceeds the ambient");
  Rng rng(seed);
  for (;;) {
    const Subspace s = echelonize(random_matrix(q.ring(), dim, q.rank(), rng));
    if (s.dim() == dim && is_nondegenerate(restrict_to(q, s.basis()))) return s;
  }
}

std::optional<int> fit_degree(const std::map<Int, Count>& counts) {
  if (counts.size() < 2) return std::nullopt;
  for (const auto& [q, c] : counts)
    if (c == 0 || q < 2) return std::nullopt;
  const auto& [q_max, c_max] = *counts.rbegin();
  int d = static_cast<int>(std::floor(std::log(static_cast<long double>(c_max)) / std::log(static_cast<long double>(q_max))));
  // guard the floor against rounding at exact powers
  auto power = [](Int q, int e) { return std::pow(static_cast<long double>(q), e); };
  if (static_cast<long double>(c_max) >= power(q_max, d + 1)) ++d;
  if (d > 0 && static_cast<long double>(c_max) < power(q_max, d)) --d;

  long double previous = INFINITY;
  for (const auto& [q, c] : counts) {
    const long double r = static_cast<long double>(c) / power(q, d);
    if (r < 1 || r > previous * (1 + 1e-12L)) return std::nullopt;
    previous = r;
  }
  return d;
}

CensusReport census(Family family, std::size_t n, std::size_t j, const std::vector<Int>& primes, CountMethod method) {
  require(family != Family::Z_strata, Errc::OutOfRange, "use census_strata for the Z family");
  CensusReport report{family, n, j, {}, predicted_dimension(family, n, j), std::nullopt};
  std::vector<Count> counts(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) { counts[i] = count_flags(family, n, j, primes[i], method); });
  for (std::size_t i = 0; i < primes.size(); ++i) report.counts[primes[i]] = counts[i];
  report.fitted_degree = fit_degree(report.counts);
  return report;
}

std::vector<CensusReport> census_strata(std::size_t dim2n, const std::vector<Int>& primes, std::uint64_t seed) {
  require(dim2n >= 2 && dim2n % 2 == 0, Errc::OutOfRange, "Z strata need an even ambient dimension");
  const std::size_t m = dim2n / 2;
  std::vector<StrataCount> per_prime(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) {
    const GramForm q = split_form(Ring::prime_field(primes[i]), dim2n);
    const Subspace p = random_nondegenerate_subspace(q, m + 1, seed * 1000003u + static_cast<std::uint64_t>(primes[i]));
    per_prime[i] = count_strata(q, p);
  });
  std::vector<CensusReport> reports;
  for (std::size_t j = 1; j <= (m + 1) / 2; ++j) {
    CensusReport r{Family::Z_strata, dim2n, j, {}, predicted_dimension(Family::Z_strata, dim2n, j), std::nullopt};
    for (std::size_t i = 0; i < primes.size(); ++i) {
      auto it = per_prime[i].strata.find(j);
      r.counts[primes[i]] = it == per_prime[i].strata.end() ? 0 : it->second;
    }
    r.fitted_degree = fit_degree(r.counts);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string to_csv(const std::vector<CensusReport>& reports) {
  std::ostringstream out;
  out << "family,n,j,q,count,predicted_dim,fitted_degree\n";
  for (const auto& r : reports) {
    for (const auto& [q, c] : r.counts) {
      out << to_string(r.family) << ',' << r.n << ',' << r.j << ',' << q << ',' << c << ',' << r.predicted_dim << ',';
      if (r.fitted_degree) {
        out << *r.fitted_degree;
      } else {
        out << "insufficient";
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace isoform
