#include "isoform/keygeom.hpp"

#include <cmath>
#include <utility>

#include "isoform/random.hpp"

namespace isoform {

namespace {

constexpr double kEnumerationLimit = 2e6;

double lagrangian_count_estimate(Int p, std::size_t n) {
  double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= std::pow(static_cast<double>(p), static_cast<double>(i)) + 1;
  return total;
}

bool totally_isotropic(const GramForm& q, const Matrix& rows) {
  for (std::size_t a = 0; a < rows.rows(); ++a)
    for (std::size_t b = a; b < rows.rows(); ++b)
      if (eval_bilinear(q, rows.row(a), rows.row(b)) != 0) return false;
  return true;
}

LagrangianResult meeting_result(const Subspace& w, const Subspace& meet) {
  LagrangianResult r{w.basis(), meet.dim(), std::nullopt, 0, false};
  if (meet.dim() == 1) r.generator = meet.basis().row(0);
  return r;
}

}  // namespace

HyperbolicBasis complete_hyperbolic_dual(const GramForm& q, const Subspace& w) {
  const Ring& ring = q.ring();
  require(q.rank() % 2 == 0, Errc::WrongDimension, "form rank must be even");
  require(w.ambient_dim() == q.rank(), Errc::AmbientMismatch, "W lives in a different ambient");
  const std::size_t n = q.rank() / 2;
  require(w.dim() == n, Errc::WrongDimension, "W must have half the ambient dimension");
  require(totally_isotropic(q, w.basis()), Errc::NotIsotropic, "W is not totally isotropic");

  // g_j with B(w_i, g_j) = delta_ij, then f_j = g_j - sum_i B(g_i, g_j)/2 w_i.
  const Matrix eg = w.basis() * q.gram();
  std::vector<Vec> g;
  for (std::size_t j = 0; j < n; ++j) g.push_back(solve_surjective(eg, unit_vector(n, j)));
  const Int half = ring.inv(2);
  HyperbolicBasis out;
  for (std::size_t j = 0; j < n; ++j) {
    Vec f = g[j];
    for (std::size_t i = 0; i < n; ++i)
      f = axpy(ring, f, ring.neg(ring.mul(half, eval_bilinear(q, g[i], g[j]))), w.basis().row(i));
    out.pairs.push_back({w.basis().row(j), std::move(f)});
  }
  require(out.verify(q), Errc::InvariantViolation, "dual completion failed the hyperbolic identities");
  return out;
}

LagrangianResult find_meeting_lagrangian(const GramForm& q, const Subspace& p, std::uint64_t seed) {
  const Ring& field = q.ring();
  require(field.is_field(), Errc::InvalidRing, "find_meeting_lagrangian works over the residue field");
  require(q.rank() >= 2 && q.rank() % 2 == 0, Errc::WrongDimension, "form rank must be even and positive");
  require(p.ambient_dim() == q.rank(), Errc::AmbientMismatch, "P lives in a different ambient");
  const std::size_t n = q.rank() / 2;
  require(p.dim() == n + 1, Errc::WrongDimension, "P must have dimension n+1");
  require(is_nondegenerate(restrict_to(q, p.basis())), Errc::Degenerate, "Q restricted to P is degenerate");

  const WittDecomposition wd = witt_decompose(q, seed);
  require(wd.index == n, Errc::NotHyperbolic, "form is not hyperbolic");
  std::vector<Vec> standard;
  for (const auto& pr : wd.hyperbolic.pairs) standard.push_back(pr.e);
  const Matrix standard_rows = Matrix::from_rows(field, standard);

  Rng rng(seed);
  Matrix a = Matrix::identity(field, q.rank());
  const std::size_t budget = 64 * n;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    if (attempt > 0) a = reflection(q, random_anisotropic_vector(q, rng)).matrix() * a;
    const Subspace w = echelonize(standard_rows * a.transpose());
    const Subspace meet = intersect(w, p);
    if (meet.dim() == 1) {
      LagrangianResult r = meeting_result(w, meet);
      r.attempts = attempt + 1;
      return r;
    }
  }

  if (lagrangian_count_estimate(field.p(), n) > kEnumerationLimit)
    throw ExhaustedError("random search over " + std::to_string(budget) +
                             " isometries found no W meeting P in a line; enumeration is over budget",
                         {}, false);

  std::map<std::size_t, Count> strata;
  std::optional<LagrangianResult> found;
  enumerate_isotropic_subspaces(q, n, [&](const Subspace& w) {
    const Subspace meet = intersect(w, p);
    ++strata[meet.dim()];
    if (meet.dim() == 1) {
      found = meeting_result(w, meet);
      return false;
    }
    return true;
  });
  if (found) {
    found->attempts = budget;
    found->used_enumeration = true;
    return *found;
  }
  throw ExhaustedError("no maximal isotropic subspace meets P in a line over " + field.to_string(), strata, true);
}

ModuleConstruction prop_mod_construct(const GramForm& q, const FreeSummand& n_summand, std::uint64_t seed) {
  const Ring& ring = q.ring();
  require(n_summand.ring() == ring, Errc::RingMismatch, "N and Q over different rings");
  require(q.rank() >= 2 && q.rank() % 2 == 0, Errc::WrongDimension, "form rank must be even and positive");
  const std::size_t n = q.rank() / 2;
  require(n_summand.ambient_rank() == q.rank(), Errc::AmbientMismatch, "N lives in a different ambient");
  require(n_summand.rank() == n + 1, Errc::WrongDimension, "N must have rank n+1");
  require(is_nondegenerate(q), Errc::Degenerate, "Q is degenerate");
  require(is_nondegenerate(restrict_to(q, n_summand.basis())), Errc::Degenerate, "Q restricted to N is degenerate");

  // (1) hyperbolic basis of M over the ring
  const WittDecomposition wd = witt_decompose_local(q, seed);
  require(wd.index == n, Errc::NotHyperbolic, "residue form is not hyperbolic");
  const Matrix frame = wd.hyperbolic.frame(ring, q.rank());

  // (2) W̄ meeting N̄ in a line over the residue field
  const GramForm q_res = residue(q);
  const Subspace n_res = n_summand.residue_subspace();
  const LagrangianResult search = find_meeting_lagrangian(q_res, n_res, seed);
  const Subspace w_res = echelonize(search.basis);

  // (3) Ā with Ā(ē_i) = w̄_i via two hyperbolic frames
  const HyperbolicBasis dual = complete_hyperbolic_dual(q_res, w_res);
  const auto frame_res_inv = inverse(residue(frame));
  require(frame_res_inv.has_value(), Errc::InvariantViolation, "hyperbolic frame is not invertible");
  const Isometry a_res(dual.frame(q_res.ring(), q.rank()) * *frame_res_inv, q_res);

  // (4) lift to O(M)
  const Isometry a = lift_isometry(a_res, q);

  // (5) W = A span(e_1..e_n)
  std::vector<Vec> w_rows;
  for (const auto& pr : wd.hyperbolic.pairs) w_rows.push_back(a.apply(pr.e));
  const Matrix w_basis = Matrix::from_rows(ring, w_rows);
  const FreeSummand w = certify_free_summand(w_basis);
  require(w.residue_subspace() == w_res, Errc::InvariantViolation, "residue of W differs from the chosen W̄");

  // (6) generator of W ∩ N = ker(N -> M/W)
  Matrix projection(ring, n, n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const Vec coords = w.full_coordinates(n_summand.basis().row(j));
    for (std::size_t i = 0; i < n; ++i) projection.set(i, j, coords[n + i]);
  }
  const Vec lambda = kernel_generator(projection);
  const Vec gen = n_summand.basis().transpose() * lambda;
  require(eval_quad(q, gen) == 0 && is_unimodular(ring, gen) && w.contains(gen), Errc::InvariantViolation,
          "kernel generator fails its postconditions");

  ModuleConstruction out{LagrangianResult{w_basis, 1, gen, search.attempts, search.used_enumeration}, w_res,
                         wd.hyperbolic, a, lambda};
  const std::string problem = verify_module_construction(q, n_summand, out);
  require(problem.empty(), Errc::InvariantViolation, problem);
  return out;
}

std::string verify_module_construction(const GramForm& q, const FreeSummand& n_summand, const ModuleConstruction& c) {
  const Ring& ring = q.ring();
  const Matrix& w = c.result.basis;
  const std::size_t n = q.rank() / 2;
  if (w.rows() != n) return "W has rank " + std::to_string(w.rows()) + ", expected " + std::to_string(n);
  if (!totally_isotropic(q, w)) return "W is not totally isotropic";
  if (residue_rank(w) != n) return "residue rows of W are dependent";
  if (intersect(echelonize(residue(w)), n_summand.residue_subspace()).dim() != 1)
    return "residue of W does not meet residue of N in a line";
  if (!c.result.generator) return "missing generator";
  const Vec& g = *c.result.generator;
  if (eval_quad(q, g) != 0) return "generator is not isotropic";
  if (!is_unimodular(ring, g)) return "generator is not unimodular";
  if (!n_summand.contains(g)) return "generator is not in N";
  return {};
}

}  // namespace isoform
