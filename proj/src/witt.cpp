#include "isoform/witt.hpp"

#include <cmath>
#include <utility>

#include "isoform/error.hpp"
#include "isoform/linalg.hpp"
#include "projective.hpp"

namespace isoform {

Isometry::Isometry(Matrix a, GramForm form) : a_(std::move(a)), form_(std::move(form)) {
  require(a_.is_square() && a_.rows() == form_.rank(), Errc::DimensionMismatch, "isometry shape mismatch");
  require(a_.ring() == form_.ring(), Errc::RingMismatch, "isometry and form over different rings");
  require(a_.transpose() * form_.gram() * a_ == form_.gram(), Errc::InvariantViolation,
          "matrix does not preserve the form");
}

Isometry Isometry::identity(const GramForm& form) {
  return Isometry(Matrix::identity(form.ring(), form.rank()), form);
}

Isometry Isometry::then_after(const Isometry& other) const {
  require(form_ == other.form_, Errc::PreconditionViolated, "composing isometries of different forms");
  return Isometry(a_ * other.a_, form_);
}

bool HyperbolicBasis::verify(const GramForm& q) const {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (eval_bilinear(q, pairs[i].e, pairs[j].e) != 0) return false;
      if (eval_bilinear(q, pairs[i].f, pairs[j].f) != 0) return false;
      if (eval_bilinear(q, pairs[i].e, pairs[j].f) != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

Matrix HyperbolicBasis::frame(const Ring& ring, std::size_t ambient) const {
  std::vector<Vec> cols;
  for (const auto& pr : pairs) cols.push_back(pr.e);
  for (const auto& pr : pairs) cols.push_back(pr.f);
  return Matrix::from_columns(ring, cols, ambient);
}

Vec reflect(const GramForm& q, const Vec& u, const Vec& v) {
  const Ring& ring = q.ring();
  const Int norm = eval_quad(q, u);
  if (!ring.is_unit(norm)) raise(Errc::NonUnitNorm, "reflection vector has non-unit norm " + std::to_string(norm));
  const Int coeff = ring.mul(ring.mul(2, eval_bilinear(q, u, v)), ring.inv(norm));
  return axpy(ring, v, ring.neg(coeff), u);
}

Isometry reflection(const GramForm& q, const Vec& u) {
  const Ring& ring = q.ring();
  const Int norm = eval_quad(q, u);
  if (!ring.is_unit(norm)) raise(Errc::NonUnitNorm, "reflection vector has non-unit norm " + std::to_string(norm));
  // I - 2 Q(u)^{-1} u (G u)^T
  const Int c = ring.neg(ring.mul(2, ring.inv(norm)));
  const Vec gu = polar(q, u);
  Matrix a = Matrix::identity(ring, q.rank());
  for (std::size_t i = 0; i < q.rank(); ++i)
    for (std::size_t j = 0; j < q.rank(); ++j) a.set(i, j, a(i, j) + ring.mul(c, ring.mul(u[i], gu[j])));
  return Isometry(std::move(a), q);
}

Matrix compose_reflections(const GramForm& q, const std::vector<Vec>& vectors) {
  Matrix a = Matrix::identity(q.ring(), q.rank());
  for (const Vec& u : vectors) a = a * reflection(q, u).matrix();
  return a;
}

Vec random_anisotropic_vector(const GramForm& q, Rng& rng) {
  require(q.rank() > 0, Errc::PreconditionViolated, "rank-zero form has no anisotropic vectors");
  require(is_nondegenerate(q), Errc::Degenerate, "form is degenerate");
  for (;;) {
    Vec u = random_vector(q.ring(), q.rank(), rng);
    if (q.ring().is_unit(eval_quad(q, u))) return u;
  }
}

namespace {

constexpr double kExhaustiveLimit = 1e6;

std::optional<Vec> isotropic_from_diagonal(const Ring& f, const Vec& d) {
  const std::size_t r = d.size();
  if (r == 0 || r == 1) return std::nullopt;
  if (r == 2) {
    // d0 x^2 + d1 y^2 = 0 with x = 1: y^2 = -d0 / d1.
    const auto s = f.sqrt_residue(f.neg(f.mul(d[0], f.inv(d[1]))));
    if (!s) return std::nullopt;
    return Vec{1, *s};
  }
  const Int c_inv = f.inv(d[2]);
  for (Int y = 0; y < f.p(); ++y) {
    const Int rhs = f.neg(f.mul(f.add(d[0], f.mul(d[1], f.mul(y, y))), c_inv));
    if (auto z = f.sqrt_residue(rhs)) {
      Vec v(r, 0);
      v[0] = 1;
      v[1] = y;
      v[2] = *z;
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Vec> find_isotropic_vector(const GramForm& q, std::uint64_t seed) {
  const Ring& f = q.ring();
  require(f.is_field(), Errc::InvalidRing, "find_isotropic_vector works over a field");
  require(is_nondegenerate(q), Errc::Degenerate, "find_isotropic_vector needs a non-degenerate form");
  const std::size_t n = q.rank();
  if (n == 0) return std::nullopt;

  if (std::pow(static_cast<double>(f.p()), static_cast<double>(n)) <= kExhaustiveLimit) {
    std::optional<Vec> found;
    detail::scan_projective(n, f.p(), [&](const Vec& v) {
      if (eval_quad(q, v) != 0) return false;
      found = v;
      return true;
    });
    return found;
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec v = random_vector(f, n, rng);
    if (!is_zero(v) && eval_quad(q, v) == 0) return v;
  }
  const Diagonalization diag = diagonalize(q);
  auto local = isotropic_from_diagonal(f, diag.diagonal.diagonal_entries());
  if (!local) {
    require(n <= 2, Errc::InvariantViolation, "form of rank >= 3 over a finite field reported anisotropic");
    return std::nullopt;
  }
  Vec v = diag.transform * *local;
  require(eval_quad(q, v) == 0 && !is_zero(v), Errc::InvariantViolation, "isotropic fallback produced a bad vector");
  return v;
}

HyperbolicSplit split_hyperbolic(const GramForm& q, const Vec& v) {
  const Ring& ring = q.ring();
  const std::size_t n = q.rank();
  require(v.size() == n, Errc::DimensionMismatch, "vector length does not match form rank");
  require(is_nondegenerate(q), Errc::Degenerate, "split_hyperbolic needs a non-degenerate form");
  require(eval_quad(q, v) == 0, Errc::NotIsotropic, "split_hyperbolic needs an isotropic vector");
  require(is_unimodular(ring, v), Errc::PreconditionViolated, "split_hyperbolic needs a unimodular vector");

  const Vec gv = polar(q, v);
  std::size_t i = 0;
  while (i < n && !ring.is_unit(gv[i])) ++i;
  require(i < n, Errc::InvariantViolation, "no dual vector for a unimodular isotropic vector");
  const Vec w = unit_vector(n, i);
  const Int b_inv = ring.inv(gv[i]);
  const Int half = ring.inv(2);
  const Int shift = ring.mul(ring.mul(q.gram()(i, i), ring.mul(b_inv, b_inv)), half);
  const Vec& e = v;
  Vec f = axpy(ring, scale(ring, w, b_inv), ring.neg(shift), e);

  // x -> x - B(f,x) e - B(e,x) f projects onto the complement of the plane.
  std::vector<Vec> chosen;
  std::size_t residue_rank_so_far = 0;
  for (std::size_t c = 0; c < n && chosen.size() + 2 < n; ++c) {
    const Vec x = unit_vector(n, c);
    Vec y = axpy(ring, x, ring.neg(eval_bilinear(q, f, x)), e);
    y = axpy(ring, y, ring.neg(eval_bilinear(q, e, x)), f);
    chosen.push_back(y);
    const std::size_t r = residue_rank(Matrix::from_rows(ring, chosen));
    if (r == residue_rank_so_far) {
      chosen.pop_back();
    } else {
      residue_rank_so_far = r;
    }
  }
  Matrix complement = Matrix::from_rows(ring, chosen, n);
  require(complement.rows() + 2 == n, Errc::InvariantViolation, "hyperbolic complement has the wrong rank");
  require(eval_quad(q, f) == 0 && eval_bilinear(q, e, f) == 1, Errc::InvariantViolation,
          "split produced a non-hyperbolic pair");
  return {{e, std::move(f)}, std::move(complement)};
}

namespace {

WittDecomposition decompose(const GramForm& q, std::uint64_t seed, bool local) {
  const Ring& ring = q.ring();
  require(is_nondegenerate(q), Errc::Degenerate, "Witt decomposition needs a non-degenerate form");
  const std::size_t n = q.rank();
  WittDecomposition out{0, {}, Matrix::identity(ring, n), q};
  Matrix basis = Matrix::identity(ring, n);
  for (std::uint64_t step = 0; basis.rows() > 0; ++step) {
    const GramForm sub = restrict_to(q, basis);
    std::optional<Vec> iso;
    if (local && !ring.is_field()) {
      auto res = find_isotropic_vector(residue(sub), seed + step);
      if (res) iso = hensel_lift_isotropic(sub, *res);
    } else {
      iso = find_isotropic_vector(sub, seed + step);
    }
    if (!iso) break;
    const HyperbolicSplit split = split_hyperbolic(sub, *iso);
    const Matrix to_ambient = basis.transpose();
    out.hyperbolic.pairs.push_back({to_ambient * split.pair.e, to_ambient * split.pair.f});
    basis = split.complement * basis;
  }
  out.index = out.hyperbolic.size();
  out.anisotropic_basis = basis;
  out.anisotropic = restrict_to(q, basis);
  require(out.hyperbolic.verify(q), Errc::InvariantViolation, "Witt decomposition basis fails the hyperbolic identities");
  require(2 * out.index + out.anisotropic.rank() == n, Errc::InvariantViolation, "Witt decomposition rank mismatch");
  require(out.anisotropic.rank() <= 2, Errc::InvariantViolation, "anisotropic part of rank >= 3 over a finite residue field");
  return out;
}

}  // namespace

WittDecomposition witt_decompose(const GramForm& q, std::uint64_t seed) {
  require(q.ring().is_field(), Errc::InvalidRing, "witt_decompose works over a field; use witt_decompose_local");
  return decompose(q, seed, false);
}

WittDecomposition witt_decompose_local(const GramForm& q, std::uint64_t seed) { return decompose(q, seed, true); }

std::vector<Vec> cartan_dieudonne(const Isometry& a) {
  const GramForm& q = a.form();
  const Ring& ring = q.ring();
  const std::size_t n = q.rank();
  const Diagonalization diag = diagonalize(q);
  std::vector<Vec> factors;
  Matrix sigma = a.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec x = diag.transform.col(i);
    const Vec y = sigma * x;
    if (y == x) continue;
    const Vec d = sub(ring, x, y);
    if (ring.is_unit(eval_quad(q, d))) {
      factors.push_back(d);
      sigma = reflection(q, d).matrix() * sigma;
    } else {
      // Q(x+y) + Q(x-y) = 4 Q(x) is a unit, so Q(x+y) is.
      const Vec s = add(ring, x, y);
      factors.push_back(s);
      factors.push_back(x);
      sigma = reflection(q, x).matrix() * reflection(q, s).matrix() * sigma;
    }
  }
  require(sigma == Matrix::identity(ring, n), Errc::InvariantViolation, "Cartan-Dieudonne reduction did not reach the identity");
  require(factors.size() <= 2 * n, Errc::InvariantViolation, "too many reflection factors");
  return factors;
}

Isometry lift_isometry(const Isometry& residue_isometry, const GramForm& q) {
  require(residue_isometry.form() == residue(q), Errc::PreconditionViolated,
          "residue isometry does not preserve the residue of the target form");
  const std::vector<Vec> factors = cartan_dieudonne(residue_isometry);
  Isometry lifted(compose_reflections(q, factors), q);
  require(residue(lifted.matrix()) == residue_isometry.matrix(), Errc::InvariantViolation,
          "lifted isometry does not reduce to the input");
  return lifted;
}

Vec hensel_lift_isotropic(const GramForm& q, const Vec& residue_vector) {
  const Ring& ring = q.ring();
  const GramForm q_res = residue(q);
  require(residue_vector.size() == q.rank(), Errc::DimensionMismatch, "vector length does not match form rank");
  require(is_nondegenerate(q), Errc::Degenerate, "Hensel lifting needs a non-degenerate form");
  Vec v(residue_vector.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = q_res.ring().reduce(residue_vector[i]);
  require(!is_zero(v), Errc::PreconditionViolated, "cannot lift the zero vector");
  require(eval_quad(q_res, v) == 0, Errc::NotIsotropic, "residue vector is not isotropic");

  const Vec gv = polar(q, v);
  std::size_t dir = 0;
  while (dir < v.size() && !ring.is_unit(gv[dir])) ++dir;
  require(dir < v.size(), Errc::InvariantViolation, "no unit gradient direction");
  const Vec d = unit_vector(v.size(), dir);
  const Vec start = v;
  for (int iter = 0; iter < 64; ++iter) {
    const Int value = eval_quad(q, v);
    if (value == 0) break;
    const Int slope = ring.mul(2, eval_bilinear(q, v, d));
    v = axpy(ring, v, ring.neg(ring.mul(value, ring.inv(slope))), d);
  }
  require(eval_quad(q, v) == 0, Errc::InvariantViolation, "Newton iteration did not converge");
  require(residue(ring, v) == start, Errc::InvariantViolation, "Hensel lift changed the residue");
  return v;
}

}  // namespace isoform
