#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isoform/error.hpp"

namespace isoform {

using Int = std::int64_t;
using Vec = std::vector<Int>;

enum class RingKind { prime_field, local_zpk };

/// Coefficient ring: either the prime field F_p or the local ring Z/p^k with
/// maximal ideal (p). The prime p is odd; p^k must stay below 2^31 so every
/// product of two canonical residues fits in a signed 64-bit integer.
class Ring {
 public:
  static Ring prime_field(Int p);
  static Ring local(Int p, int k);
  /// Parses the CLI syntax `fp:p` or `zpk:p,k`.
  static Ring parse(std::string_view text);

  RingKind kind() const noexcept { return kind_; }
  Int p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  Int modulus() const noexcept { return modulus_; }
  /// True when arithmetic is that of a field (F_p, or Z/p^1).
  bool is_field() const noexcept { return k_ == 1; }
  Ring residue_field() const { return prime_field(p_); }

  Int reduce(Int x) const noexcept {
    Int r = x % modulus_;
    return r < 0 ? r + modulus_ : r;
  }
  Int add(Int a, Int b) const noexcept { return reduce(a + b); }
  Int sub(Int a, Int b) const noexcept { return reduce(a - b); }
  Int neg(Int a) const noexcept { return a == 0 ? 0 : modulus_ - a; }
  Int mul(Int a, Int b) const noexcept { return (a * b) % modulus_; }
  Int pow(Int base, std::uint64_t exponent) const noexcept;

  bool is_unit(Int a) const noexcept { return a % p_ != 0; }
  /// Inverse of a unit; throws NonUnitInverse otherwise.
  Int inv(Int a) const;
  /// p-adic valuation of a canonical residue, with valuation(0) = k.
  int valuation(Int a) const noexcept;
  Int residue(Int a) const noexcept { return a % p_; }

  /// Square root in the residue field, if one exists (Tonelli-Shanks).
  std::optional<Int> sqrt_residue(Int a) const;
  bool is_square_residue(Int a) const;

  std::string to_string() const;

  friend bool operator==(const Ring& a, const Ring& b) noexcept {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.k_ == b.k_;
  }

 private:
  Ring(RingKind kind, Int p, int k, Int modulus) : kind_(kind), p_(p), k_(k), modulus_(modulus) {}

  RingKind kind_;
  Int p_;
  int k_;
  Int modulus_;
};

bool is_odd_prime(Int p) noexcept;

/// A ring element carrying its ring; used where mixing rings must be caught.
struct RingElem {
  Ring ring;
  Int value;

  RingElem(const Ring& r, Int v) : ring(r), value(r.reduce(v)) {}

  bool is_unit() const noexcept { return ring.is_unit(value); }
  RingElem inverse() const { return {ring, ring.inv(value)}; }

  friend bool operator==(const RingElem& a, const RingElem& b) noexcept {
    return a.ring == b.ring && a.value == b.value;
  }
};

RingElem operator+(const RingElem& x, const RingElem& y);
RingElem operator-(const RingElem& x, const RingElem& y);
RingElem operator*(const RingElem& x, const RingElem& y);
RingElem operator-(const RingElem& x);

/// Reduction to the residue field F_p.
RingElem residue(const RingElem& x);
/// Canonical lift of a residue into a ring with the same p.
RingElem lift(const RingElem& x, const Ring& target);

Vec residue(const Ring& ring, const Vec& v);
bool is_unimodular(const Ring& ring, const Vec& v);

}  // namespace isoform
