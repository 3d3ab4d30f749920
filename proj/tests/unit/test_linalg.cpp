#include <doctest.h>

#include "isoform/linalg.hpp"
#include "isoform/random.hpp"
#include "support/oracles.hpp"

using namespace isoform;

namespace {
Matrix rows(const Ring& r, std::vector<Vec> v, std::size_t cols = 0) { return Matrix::from_rows(r, v, cols); }
}  // namespace

TEST_CASE("echelonize") {
  const Ring f3 = Ring::prime_field(3), f5 = Ring::prime_field(5);
  CHECK(echelonize(rows(f3, {{2, 0}, {0, 1}})).basis() == rows(f3, {{1, 0}, {0, 1}}));
  CHECK(echelonize(Matrix(f3, 2, 3)).dim() == 0);
  const Subspace s = echelonize(rows(f5, {{1, 2}, {2, 4}}));
  CHECK(s.dim() == 1);
  CHECK(s.basis() == rows(f5, {{1, 2}}));
}

TEST_CASE("echelon form matches the reference RREF") {
  const Ring f = Ring::prime_field(7);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Matrix m = random_matrix(f, 1 + i % 4, 5, rng);
    CHECK(echelonize(m).basis().to_rows() == oracle::rref_mod_p(m.to_rows(), 7));
  }
}

TEST_CASE("intersect") {
  const Ring f5 = Ring::prime_field(5);
  const Subspace a = echelonize(rows(f5, {unit_vector(4, 0), unit_vector(4, 1)}));
  const Subspace b = echelonize(rows(f5, {unit_vector(4, 1), unit_vector(4, 2)}));
  CHECK(intersect(a, b) == echelonize(rows(f5, {unit_vector(4, 1)})));
  CHECK(intersect(a, a) == a);
}

TEST_CASE("intersection dimension agrees with the rank formula") {
  const Ring f3 = Ring::prime_field(3);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Matrix a = random_matrix(f3, 1 + i % 5, 6, rng), b = random_matrix(f3, 1 + (i / 5) % 5, 6, rng);
    const Subspace meet = intersect(echelonize(a), echelonize(b));
    CHECK(meet.dim() == oracle::meet_dim(a.to_rows(), b.to_rows(), 3));
    for (std::size_t r = 0; r < meet.dim(); ++r) {
      CHECK(echelonize(a).contains(meet.basis().row(r)));
      CHECK(echelonize(b).contains(meet.basis().row(r)));
    }
  }
}

TEST_CASE("nullspace rows are annihilated") {
  const Ring f = Ring::prime_field(5);
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const Matrix a = random_matrix(f, 3, 6, rng);
    const Matrix ns = nullspace(a);
    CHECK(ns.rows() == 6 - oracle::rank_mod_p(a.to_rows(), 5));
    CHECK((a * ns.transpose()).is_zero());
  }
}

TEST_CASE("invertibility over Z/p^k is decided by the residue") {
  const Ring z9 = Ring::local(3, 2);
  CHECK(is_invertible_matrix(rows(z9, {{1, 3}, {0, 1}})));
  CHECK_FALSE(is_invertible_matrix(rows(z9, {{3, 0}, {0, 1}})));
  const Ring z25 = Ring::local(5, 2);
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const Matrix m = random_matrix(z25, 4, 4, rng);
    CHECK(is_invertible_matrix(m) == z25.is_unit(determinant(m)));
    if (auto inv = inverse(m)) CHECK(*inv * m == Matrix::identity(z25, 4));
  }
}

TEST_CASE("determinant over Z/p^k matches cofactor expansion") {
  const Ring z27 = Ring::local(3, 3);
  Rng rng(23);
  auto det3 = [](const oracle::M& a, Int m) {
    Int d = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
            a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    return oracle::mod(d, m);
  };
  for (int i = 0; i < 100; ++i) {
    Matrix m = random_matrix(z27, 3, 3, rng);
    if (i % 3 == 0) m = scale(m, 3);
    CHECK(determinant(m) == det3(m.to_rows(), 27));
  }
}

TEST_CASE("certify_free_summand") {
  const Ring z9 = Ring::local(3, 2);
  const FreeSummand s = certify_free_summand(rows(z9, {{1, 0, 0}, {0, 1, 3}}));
  CHECK(s.rank() == 2);
  CHECK(s.complement().rows() == 1);
  try {
    (void)certify_free_summand(rows(z9, {{3, 0}, {0, 1}}));
    FAIL("expected NotASummand");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotASummand);
  }
}

TEST_CASE("lifts of independent residue rows certify, with a complement") {
  const Ring z27 = Ring::local(3, 3);
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    Matrix m = random_matrix(z27, 1 + i % 4, 5, rng);
    const bool independent = oracle::rank_mod_p(residue(m).to_rows(), 3) == m.rows();
    if (!independent) {
      CHECK_THROWS_AS(certify_free_summand(m), Error);
      continue;
    }
    const FreeSummand s = certify_free_summand(m);
    CHECK(is_invertible_matrix(vstack(s.basis(), s.complement())));
    const Vec v = random_vector(z27, 5, rng);
    const Vec coords = s.full_coordinates(v);
    Vec back(5, 0);
    const Matrix full = vstack(s.basis(), s.complement());
    for (std::size_t r = 0; r < full.rows(); ++r) back = axpy(z27, back, coords[r], full.row(r));
    CHECK(back == v);
  }
}

TEST_CASE("kernel_generator") {
  const Ring z9 = Ring::local(3, 2);
  CHECK(kernel_generator(rows(z9, {{1, 0, 0}, {0, 1, 0}})) == Vec{0, 0, 1});
  const Matrix a = rows(z9, {{1, 0, 2}, {0, 1, 5}});
  const Vec w = kernel_generator(a);
  CHECK(w == Vec{7, 4, 1});
  CHECK(is_zero(a * w));
}

TEST_CASE("kernel generators of random surjections over Z/27") {
  const Ring z27 = Ring::local(3, 3);
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 4;
    Matrix proj(z27, n, n + 1);
    for (std::size_t r = 0; r < n; ++r) proj.set(r, r, 1);
    const Matrix a = random_invertible(z27, n, rng) * proj * random_invertible(z27, n + 1, rng);
    const Vec w = kernel_generator(a);
    CHECK(is_zero(a * w));
    CHECK(is_unimodular(z27, w));
  }
}

TEST_CASE("a non-surjective map is refused") {
  const Ring z9 = Ring::local(3, 2);
  try {
    (void)kernel_generator(rows(z9, {{1, 0, 0}, {3, 0, 0}}));
    FAIL("expected NotSurjective");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotSurjective);
  }
}
