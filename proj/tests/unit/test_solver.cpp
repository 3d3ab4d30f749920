#include <doctest.h>

#include "isoform/random.hpp"
#include "isoform/solver.hpp"
#include "support/oracles.hpp"

using namespace isoform;

namespace {

Int weighted(const Ring& r, const Vec& alphas, const Vec& t) {
  Int s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) s = oracle::mod(s + alphas[i] * t[i] % r.modulus() * t[i], r.modulus());
  return s;
}

}  // namespace

TEST_CASE("lemma_tech_forward") {
  const Ring z9 = Ring::local(3, 2);
  const Vec alphas{1, 1, z9.neg(2)};
  const Vec v = lemma_tech_forward(z9, alphas, {1, 1});
  CHECK(v == Vec{1, 1, 1});
  CHECK(weighted(z9, alphas, v) == 0);
}

TEST_CASE("lemma_tech_forward guards") {
  const Ring f5 = Ring::prime_field(5);
  try {
    (void)lemma_tech_forward(f5, {1, 4}, {1});
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PreconditionViolated);
  }
  try {
    (void)lemma_tech_forward(f5, {1, 1, 1}, {1, 1});
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PreconditionViolated);
  }
}

TEST_CASE("lemma_tech_reduce with a unit last coordinate") {
  const Ring z9 = Ring::local(3, 2);
  CHECK(lemma_tech_reduce(z9, {1, 1, z9.neg(2)}, {1, 1, 1}) == Vec{1, 1});
  const Ring f3 = Ring::prime_field(3);
  const Vec t = lemma_tech_reduce(f3, {1, 1, 1}, {1, 1, 1});
  CHECK(t == Vec{1, 1});
  CHECK(weighted(f3, {1, 1}, t) == 2);
}

TEST_CASE("lemma_tech_reduce deflects a non-unit last coordinate") {
  const Ring z9 = Ring::local(3, 2);
  const Vec alphas{1, 8, 1, 8};
  const Vec v{1, 1, 3, 3};
  REQUIRE(weighted(z9, alphas, v) == 0);
  const Vec t = lemma_tech_reduce(z9, alphas, v);
  CHECK(t.size() == 3);
  CHECK(weighted(z9, alphas, t) == 1);
}

TEST_CASE("forward then reduce on random instances") {
  Rng rng(131);
  for (int i = 0; i < 200; ++i) {
    const Int p = std::vector<Int>{3, 5, 7}[i % 3];
    const Ring r = Ring::local(p, 1 + i % 3);
    const std::size_t n = 3 + i % 3;
    Vec alphas, sol;
    do {
      alphas.clear();
      sol = random_vector(r, n - 1, rng);
      for (std::size_t a = 0; a + 1 < n; ++a) alphas.push_back(random_unit(r, rng));
      alphas.push_back(r.neg(weighted(r, alphas, sol)));
    } while (!r.is_unit(alphas.back()));
    const Vec v = lemma_tech_forward(r, alphas, sol);
    CHECK(weighted(r, alphas, v) == 0);
    const Vec t = lemma_tech_reduce(r, alphas, v, static_cast<std::uint64_t>(i));
    CHECK(weighted(r, alphas, t) == r.neg(alphas.back()));
  }
}

TEST_CASE("solve_pfister fast path for c = 1") {
  const PfisterSpec spec(Ring::prime_field(5), {1});
  const SolutionCertificate cert = solve_pfister({spec, 1});
  CHECK(cert.verdict == Verdict::solved);
  CHECK(*cert.witness == Vec{1, 0});
}

TEST_CASE("x^2 - y^2 = 2 over Z/9") {
  const Ring z9 = Ring::local(3, 2);
  const auto values = oracle::value_set({1, 8}, 9);
  REQUIRE(values.count(2) == 1);
  for (bool fast : {true, false}) {
    const SolutionCertificate cert = solve_pfister({PfisterSpec(z9, {1}), 2}, 0, {fast});
    REQUIRE(cert.verdict == Verdict::solved);
    CHECK(oracle::quad({{1, 0}, {0, 8}}, *cert.witness, 9) == 2);
  }
}

TEST_CASE("x^2 + y^2 = 2 over Z/9 agrees with the residue search") {
  const Ring z9 = Ring::local(3, 2);
  const bool residue_solvable = oracle::value_set({1, 1}, 3).count(2) > 0;
  const SolutionCertificate cert = solve_pfister({PfisterSpec(z9, {z9.neg(1)}), 2}, 0, {false});
  CHECK((cert.verdict == Verdict::solved) == residue_solvable);
  REQUIRE(cert.residue_witt.has_value());
  CHECK(cert.residue_witt->is_hyperbolic() == residue_solvable);
  if (cert.witness) CHECK(oracle::quad({{1, 0}, {0, 1}}, *cert.witness, 9) == 2);
}

TEST_CASE("residue obstruction certifies an anisotropic twist") {
  const WittDecomposition wd = residue_obstruction(GramForm::diagonal(Ring::local(3, 2), {1, 1}), 0);
  CHECK_FALSE(wd.is_hyperbolic());
  CHECK(wd.anisotropic.rank() == 2);
}

TEST_CASE("every unit is solved with an exact witness") {
  for (const Ring& r : {Ring::local(3, 3), Ring::local(5, 2)}) {
    Rng rng(137);
    for (std::size_t m = 1; m <= 2; ++m) {
      Vec slots;
      for (std::size_t i = 0; i < m; ++i) slots.push_back(random_unit(r, rng));
      const PfisterSpec spec(r, slots);
      const oracle::V d = oracle::pfister_diagonal(slots, r.modulus());
      for (Int c = 1; c < r.modulus(); ++c) {
        if (!r.is_unit(c)) continue;
        const SolutionCertificate cert = solve_pfister({spec, c}, static_cast<std::uint64_t>(c), {false});
        REQUIRE(cert.verdict == Verdict::solved);
        CHECK(weighted(r, d, *cert.witness) == c);
      }
    }
  }
}

TEST_CASE("solve_pfister rejects a non-unit c") {
  CHECK_THROWS_AS(solve_pfister({PfisterSpec(Ring::local(3, 2), {1}), 3}), Error);
}

TEST_CASE("solve_pfister is deterministic") {
  const PfisterSpec spec(Ring::local(7, 2), {3, 5});
  const auto a = solve_pfister({spec, 10}, 4, {false}), b = solve_pfister({spec, 10}, 4, {false});
  CHECK(*a.witness == *b.witness);
}

TEST_CASE("value set of x^2 - y^2 over F_5 is a subgroup") {
  const auto values = oracle::value_set({1, 4}, 5);
  std::set<Int> units;
  for (const auto& [c, v] : values)
    if (c) units.insert(c);
  CHECK(units.count(1));
  for (Int a : units) {
    for (Int b : units) CHECK(units.count(a * b % 5));
    CHECK(units.count(*oracle::inverse_by_search(a, 5)));
  }
}

TEST_CASE("check_group_law") {
  const PfisterSpec spec(Ring::local(3, 2), {2});
  const GroupLawReport empty = check_group_law(spec, 0, 1);
  CHECK(empty.trials == 0);
  CHECK(empty.violations.empty());
  const GroupLawReport r = check_group_law(spec, 10, 1, {false});
  CHECK(r.ok());
  CHECK(r.closure_checks + r.inconclusive >= 10);
  CHECK(r.inverse_checks == r.closure_checks);
}

TEST_CASE("inverse witness identity") {
  const Ring r = Ring::local(5, 2);
  const PfisterSpec spec(r, {2, 3});
  const GramForm q = pfister_expand(spec);
  const SolutionCertificate cert = solve_pfister({spec, 7}, 0, {false});
  const Int inv = r.inv(7);
  CHECK(eval_quad(q, scale(r, *cert.witness, inv)) == inv);
}
