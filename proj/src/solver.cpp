#include "isoform/solver.hpp"

#include "isoform/keygeom.hpp"
#include "isoform/linalg.hpp"
#include "isoform/random.hpp"

namespace isoform {

namespace {

Vec checked_alphas(const Ring& ring, const Vec& alphas) {
  require(alphas.size() > 2, Errc::PreconditionViolated, "the lemma needs more than two variables");
  Vec out;
  for (Int a : alphas) {
    out.push_back(ring.reduce(a));
    require(ring.is_unit(out.back()), Errc::NonUnitSlot, "diagonal coefficients must be units");
  }
  return out;
}

Int weighted_square_sum(const Ring& ring, const Vec& alphas, const Vec& t) {
  Int s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) s = ring.add(s, ring.mul(alphas[i], ring.mul(t[i], t[i])));
  return s;
}

Vec divide_by_last(const Ring& ring, const Vec& v) {
  const Int inv = ring.inv(v.back());
  Vec out(v.begin(), v.end() - 1);
  for (Int& x : out) x = ring.mul(x, inv);
  return out;
}

std::string vec_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

Vec lemma_tech_forward(const Ring& ring, const Vec& coefficients, const Vec& sol) {
  const Vec alphas = checked_alphas(ring, coefficients);
  require(sol.size() + 1 == alphas.size(), Errc::DimensionMismatch, "solution length must be n-1");
  require(weighted_square_sum(ring, alphas, sol) == ring.neg(alphas.back()), Errc::PreconditionViolated,
          "input does not solve sum alpha_i t_i^2 = -alpha_n");
  Vec out;
  for (Int x : sol) out.push_back(ring.reduce(x));
  out.push_back(1);
  return out;
}

Vec lemma_tech_reduce(const Ring& ring, const Vec& coefficients, const Vec& input, std::uint64_t seed) {
  const Vec alphas = checked_alphas(ring, coefficients);
  Vec v;
  for (Int x : input) v.push_back(ring.reduce(x));
  const std::size_t n = alphas.size();
  require(v.size() == n, Errc::DimensionMismatch, "vector length must match the coefficients");
  require(is_unimodular(ring, v), Errc::PreconditionViolated, "v must be unimodular");
  require(weighted_square_sum(ring, alphas, v) == 0, Errc::PreconditionViolated, "v is not a zero of the form");

  const std::size_t last = n - 1;
  if (ring.is_unit(v[last])) return divide_by_last(ring, v);

  const Int p = ring.p();
  std::size_t i = 0;
  while (!ring.is_unit(v[i])) ++i;
  const GramForm q = GramForm::diagonal(ring, alphas);
  const Int offset = static_cast<Int>(seed % static_cast<std::uint64_t>(p * p));
  const Int target = ring.residue_field().neg(alphas[last] % p);
  for (std::size_t j = 0; j < last; ++j) {
    if (j == i) continue;
    const Int ai = alphas[i] % p, aj = alphas[j] % p, vi = v[i] % p, vj = v[j] % p;
    for (Int step = 0; step < p * p; ++step) {
      const Int idx = (offset + step) % (p * p);
      const Int x = idx / p, y = idx % p;
      if ((ai * vi % p * x + aj * vj % p * y) % p == 0) continue;
      if ((ai * x % p * x + aj * y % p * y) % p == target) continue;
      Vec u(n, 0);
      u[i] = x;
      u[j] = y;
      u[last] = 1;
      const Vec moved = reflect(q, u, v);
      require(ring.is_unit(moved[last]), Errc::InvariantViolation, "reflection left a non-unit last coordinate");
      return divide_by_last(ring, moved);
    }
  }
  raise(Errc::NoDeflection, "no reflection vector moves " + vec_string(v) + " to a unit last coordinate over " +
                                ring.residue_field().to_string());
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::solved: return "solved";
    case Verdict::no_solution: return "no_solution";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

WittDecomposition residue_obstruction(const GramForm& twisted, std::uint64_t seed) {
  return witt_decompose(residue(twisted), seed);
}

SolutionCertificate solve_pfister(const RepresentationProblem& problem, std::uint64_t seed, SolveOptions options) {
  const Ring& ring = problem.spec.ring();
  const Int c = ring.reduce(problem.c);
  require(ring.is_unit(c), Errc::PreconditionViolated, "c must be a unit");
  const GramForm q = pfister_expand(problem.spec);
  const std::size_t dim = q.rank();
  const Vec coeffs = q.diagonal_entries();

  SolutionCertificate cert;
  auto log = [&](std::string stage, std::string detail) { cert.trace.push_back({std::move(stage), std::move(detail)}); };
  auto finish = [&](Vec witness) {
    require(eval_quad(q, witness) == c, Errc::InvariantViolation,
            "witness " + vec_string(witness) + " does not evaluate to c");
    cert.verdict = Verdict::solved;
    cert.witness = std::move(witness);
    return cert;
  };

  if (options.fast_paths) {
    for (std::size_t s = 0; s < dim; ++s) {
      if (coeffs[s] == c) {
        log("fast_path", "c equals diagonal coefficient " + std::to_string(s));
        return finish(unit_vector(dim, s));
      }
    }
  }

  Vec twist_coeffs{1, ring.neg(c)};
  const GramForm twisted = tensor(GramForm::diagonal(ring, twist_coeffs), q);
  log("twist", "formed <1,-c> ⊗ Q of rank " + std::to_string(twisted.rank()));

  cert.residue_witt = residue_obstruction(twisted, seed);
  log("residue_witt", "index " + std::to_string(cert.residue_witt->index) + ", anisotropic rank " +
                          std::to_string(cert.residue_witt->anisotropic.rank()));
  if (!cert.residue_witt->is_hyperbolic()) {
    cert.verdict = Verdict::no_solution;
    return cert;
  }

  // N = span of the Q-coordinates and the first coordinate of the -cQ block.
  std::vector<Vec> n_rows;
  for (std::size_t s = 0; s <= dim; ++s) n_rows.push_back(unit_vector(twisted.rank(), s));
  const FreeSummand n = certify_free_summand(Matrix::from_rows(ring, n_rows));

  Vec w;
  try {
    const ModuleConstruction built = prop_mod_construct(twisted, n, seed);
    log("construct", "W found after " + std::to_string(built.result.attempts) + " attempts" +
                         (built.result.used_enumeration ? " (enumeration)" : ""));
    w = *built.result.generator;
  } catch (const ExhaustedError& e) {
    log("construct", std::string("exhausted: ") + e.what());
    cert.verdict = Verdict::inconclusive;
    return cert;
  }

  Vec alphas(coeffs);
  alphas.push_back(ring.neg(c));
  Vec isotropic(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(dim + 1));
  try {
    Vec witness = lemma_tech_reduce(ring, alphas, isotropic, seed);
    log("reduce", "isotropic generator " + vec_string(isotropic) + " -> witness " + vec_string(witness));
    return finish(std::move(witness));
  } catch (const Error& e) {
    if (e.code() != Errc::NoDeflection) throw;
    log("reduce", std::string("no deflection: ") + e.what());
    cert.verdict = Verdict::inconclusive;
    return cert;
  }
}

GroupLawReport check_group_law(const PfisterSpec& spec, std::size_t trials, std::uint64_t seed,
                               SolveOptions options) {
  const Ring& ring = spec.ring();
  const GramForm q = pfister_expand(spec);
  GroupLawReport report;
  Rng rng(seed);
  auto solve = [&](Int c) { return solve_pfister({spec, c}, rng(), options); };
  auto tag = [&](const std::string& what, Int a, Int b) {
    return what + " over " + ring.to_string() + " for c1=" + std::to_string(a) + ", c2=" + std::to_string(b);
  };

  for (std::size_t t = 0; t < trials; ++t) {
    ++report.trials;
    const Int c1 = random_unit(ring, rng), c2 = random_unit(ring, rng);
    const SolutionCertificate s1 = solve(c1), s2 = solve(c2);
    if (s1.verdict == Verdict::inconclusive || s2.verdict == Verdict::inconclusive) {
      ++report.inconclusive;
      continue;
    }
    if (s1.verdict != Verdict::solved || s2.verdict != Verdict::solved) continue;

    const SolutionCertificate prod = solve(ring.mul(c1, c2));
    ++report.closure_checks;
    if (prod.verdict == Verdict::inconclusive) ++report.inconclusive;
    else if (prod.verdict != Verdict::solved) report.violations.push_back(tag("product not represented", c1, c2));

    const Int inv = ring.inv(c1);
    ++report.inverse_checks;
    if (eval_quad(q, scale(ring, *s1.witness, inv)) != inv)
      report.violations.push_back(tag("c^-1 v does not represent c^-1", c1, c2));

    ++report.identity_checks;
    const SolutionCertificate one = solve(1);
    if (one.verdict != Verdict::solved) report.violations.push_back(tag("1 not represented", c1, c2));
  }
  return report;
}

}  // namespace isoform
