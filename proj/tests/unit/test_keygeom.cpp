#include <doctest.h>

#include "isoform/keygeom.hpp"
#include "isoform/random.hpp"
#include "support/oracles.hpp"

using namespace isoform;

namespace {

Matrix rows(const Ring& r, std::vector<Vec> v) { return Matrix::from_rows(r, v); }

Matrix random_isometry(const GramForm& q, Rng& rng) {
  Matrix a = Matrix::identity(q.ring(), q.rank());
  for (int i = 0; i < 6; ++i) a = a * reflection(q, random_anisotropic_vector(q, rng)).matrix();
  return a;
}

// Image of span(e_1..e_n) in the e1,f1,e2,f2,... ordering under a random isometry.
Subspace random_lagrangian(const GramForm& h, Rng& rng) {
  const Matrix a = random_isometry(h, rng);
  std::vector<Vec> w;
  for (std::size_t i = 0; i < h.rank() / 2; ++i) w.push_back(a * unit_vector(h.rank(), 2 * i));
  return echelonize(Matrix::from_rows(h.ring(), w));
}

}  // namespace

TEST_CASE("complete_hyperbolic_dual on coordinate Lagrangians") {
  const Ring f3 = Ring::prime_field(3);
  const GramForm hh = GramForm::hyperbolic(f3, 2);
  const HyperbolicBasis b = complete_hyperbolic_dual(hh, echelonize(rows(f3, {{1, 0, 0, 0}, {0, 0, 1, 0}})));
  REQUIRE(b.size() == 2);
  CHECK(b.pairs[0].e == Vec{1, 0, 0, 0});
  CHECK(b.pairs[1].e == Vec{0, 0, 1, 0});
  CHECK(b.pairs[0].f == Vec{0, 1, 0, 0});
  CHECK(b.pairs[1].f == Vec{0, 0, 0, 1});
}

TEST_CASE("complete_hyperbolic_dual on random Lagrangians over F_5") {
  const Ring f5 = Ring::prime_field(5);
  Rng rng(101);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 4;
    const GramForm h = GramForm::hyperbolic(f5, n);
    const Subspace w = random_lagrangian(h, rng);
    const HyperbolicBasis b = complete_hyperbolic_dual(h, w);
    CHECK(b.verify(h));
    std::vector<Vec> es;
    for (const auto& pr : b.pairs) es.push_back(pr.e);
    CHECK(echelonize(Matrix::from_rows(f5, es)) == w);
  }
}

TEST_CASE("complete_hyperbolic_dual guards") {
  const Ring f3 = Ring::prime_field(3);
  const GramForm hh = GramForm::hyperbolic(f3, 2);
  try {
    (void)complete_hyperbolic_dual(hh, echelonize(rows(f3, {{1, 1, 0, 0}, {0, 0, 1, 0}})));
    FAIL("expected NotIsotropic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotIsotropic);
  }
  try {
    (void)complete_hyperbolic_dual(hh, echelonize(rows(f3, {{1, 0, 0, 0}})));
    FAIL("expected WrongDimension");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::WrongDimension);
  }
}

TEST_CASE("every Lagrangian meets P in a line when 2n = 4") {
  const Ring f5 = Ring::prime_field(5);
  const GramForm hh = GramForm::hyperbolic(f5, 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Subspace p = random_nondegenerate_subspace(hh, 3, seed);
    for (const Subspace& w : isotropic_subspaces(hh, 2)) CHECK(intersect(w, p).dim() == 1);
    const LagrangianResult r = find_meeting_lagrangian(hh, p, seed);
    CHECK(r.meet_dim == 1);
  }
}

TEST_CASE("find_meeting_lagrangian in H^3 over F_3") {
  const Ring f3 = Ring::prime_field(3);
  const GramForm h3 = GramForm::hyperbolic(f3, 3);
  const Matrix p_rows = rows(f3, {unit_vector(6, 0), unit_vector(6, 1), unit_vector(6, 2), unit_vector(6, 3)});
  const LagrangianResult r = find_meeting_lagrangian(h3, echelonize(p_rows), 7);
  const oracle::M w = r.basis.to_rows();
  REQUIRE(w.size() == 3);
  for (const auto& a : w)
    for (const auto& b : w) CHECK(oracle::bilinear(h3.gram().to_rows(), a, b, 3) == 0);
  CHECK(oracle::rank_mod_p(w, 3) == 3);
  CHECK(oracle::meet_dim(w, p_rows.to_rows(), 3) == 1);
  REQUIRE(r.generator.has_value());
  CHECK(echelonize(p_rows).contains(*r.generator));
  CHECK(echelonize(r.basis).contains(*r.generator));
}

TEST_CASE("find_meeting_lagrangian is deterministic in the seed") {
  const Ring f7 = Ring::prime_field(7);
  const GramForm h = GramForm::hyperbolic(f7, 3);
  const Subspace p = random_nondegenerate_subspace(h, 4, 3);
  CHECK(find_meeting_lagrangian(h, p, 9).basis == find_meeting_lagrangian(h, p, 9).basis);
}

TEST_CASE("find_meeting_lagrangian guards") {
  const Ring f3 = Ring::prime_field(3);
  const GramForm hh = GramForm::hyperbolic(f3, 2);
  try {
    (void)find_meeting_lagrangian(hh, echelonize(rows(f3, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}})), 0);
    FAIL("expected Degenerate");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Degenerate);
  }
  try {
    (void)find_meeting_lagrangian(GramForm::diagonal(f3, {1, 1}), Subspace::whole(f3, 2), 0);
    FAIL("expected NotHyperbolic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotHyperbolic);
  }
}

TEST_CASE("strata of Lagrangians relative to P in ambient 6") {
  for (Int q : {3, 5}) {
    const Ring f = Ring::prime_field(q);
    const GramForm h = GramForm::hyperbolic(f, 3);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Subspace p = random_nondegenerate_subspace(h, 4, seed);
      std::map<std::size_t, Count> strata;
      for (const Subspace& w : isotropic_subspaces(h, 3))
        ++strata[oracle::meet_dim(w.basis().to_rows(), p.basis().to_rows(), q)];
      CHECK(strata[1] > 0);
      CHECK(strata[2] < strata[1]);
      CHECK(strata.size() <= 2);
    }
  }
}

TEST_CASE("prop_mod_construct over Z/9 with H + H") {
  const Ring z9 = Ring::local(3, 2);
  const GramForm hh = GramForm::hyperbolic(z9, 2);
  const FreeSummand n = certify_free_summand(rows(z9, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}}));
  REQUIRE(z9.is_unit(determinant(restrict_to(hh, n.basis()).gram())));
  const ModuleConstruction c = prop_mod_construct(hh, n, 5);
  REQUIRE(c.result.generator.has_value());
  const Vec w = *c.result.generator;
  CHECK(oracle::quad(hh.gram().to_rows(), w, 9) == 0);
  CHECK(is_unimodular(z9, w));
  CHECK(n.contains(w));
  CHECK(verify_module_construction(hh, n, c).empty());
  CHECK(echelonize(residue(c.result.basis)) == c.residue_lagrangian);
}

TEST_CASE("prop_mod_construct at k = 1 agrees with the field layer") {
  const Ring f5 = Ring::prime_field(5);
  const GramForm h = GramForm::hyperbolic(f5, 3);
  const Subspace p = random_nondegenerate_subspace(h, 4, 1);
  const ModuleConstruction c = prop_mod_construct(h, certify_free_summand(p.basis()), 2);
  const Subspace meet = intersect(echelonize(c.result.basis), p);
  CHECK(meet.dim() == 1);
  CHECK(meet.contains(*c.result.generator));
}

TEST_CASE("prop_mod_construct on random instances over Z/27") {
  const Ring z27 = Ring::local(3, 3);
  Rng rng(103);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 2 + i % 2;
    const Matrix t = random_invertible(z27, 2 * n, rng);
    const GramForm q(t.transpose() * GramForm::hyperbolic(z27, n).gram() * t);
    Matrix basis(z27, 0, 0);
    do basis = random_matrix(z27, n + 1, 2 * n, rng);
    while (residue_rank(basis) != n + 1 || !is_nondegenerate(restrict_to(q, basis)));
    const FreeSummand ns = certify_free_summand(basis);
    const ModuleConstruction c = prop_mod_construct(q, ns, static_cast<std::uint64_t>(i));
    CHECK(verify_module_construction(q, ns, c).empty());
    CHECK(c.lifted.matrix().transpose() * q.gram() * c.lifted.matrix() == q.gram());
    const ModuleConstruction again = prop_mod_construct(q, ns, static_cast<std::uint64_t>(i));
    CHECK(again.result.basis == c.result.basis);
    CHECK(*again.result.generator == *c.result.generator);
  }
}

TEST_CASE("prop_mod_construct refuses a degenerate N") {
  const Ring z9 = Ring::local(3, 2);
  const GramForm hh = GramForm::hyperbolic(z9, 2);
  const FreeSummand n = certify_free_summand(rows(z9, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}));
  try {
    (void)prop_mod_construct(hh, n, 0);
    FAIL("expected Degenerate");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Degenerate);
  }
}

TEST_CASE("the verifier catches a broken construction") {
  const Ring z9 = Ring::local(3, 2);
  const GramForm hh = GramForm::hyperbolic(z9, 2);
  const FreeSummand n = certify_free_summand(rows(z9, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}}));
  const ModuleConstruction good = prop_mod_construct(hh, n, 5);
  ModuleConstruction scaled = good;
  *scaled.result.generator = scale(z9, *good.result.generator, 3);
  CHECK(verify_module_construction(hh, n, scaled) == "generator is not unimodular");
  ModuleConstruction outside = good;
  *outside.result.generator = {0, 0, 0, 1};
  CHECK_FALSE(verify_module_construction(hh, n, outside).empty());
  ModuleConstruction bent = good;
  Matrix w = good.result.basis;
  w.set(0, 0, z9.add(w(0, 0), 1));
  w.set(0, 1, z9.add(w(0, 1), 1));
  bent.result.basis = w;
  CHECK_FALSE(verify_module_construction(hh, n, bent).empty());
}
