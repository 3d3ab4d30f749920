#include "isoform/ring.hpp"

#include <charconv>
#include <limits>

#include "isoform/error.hpp"

namespace isoform {

namespace {

constexpr Int kMaxModulus = Int{1} << 31;

Int parse_int(std::string_view text) {
  Int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    raise(Errc::Parse, "not an integer: '" + std::string(text) + "'");
  return value;
}

}  // namespace

bool is_odd_prime(Int p) noexcept {
  if (p < 3 || p % 2 == 0) return false;
  for (Int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

Ring Ring::prime_field(Int p) {
  require(is_odd_prime(p), Errc::InvalidRing, "p must be an odd prime, got " + std::to_string(p));
  require(p < kMaxModulus, Errc::InvalidRing, "p too large");
  return Ring(RingKind::prime_field, p, 1, p);
}

Ring Ring::local(Int p, int k) {
  require(is_odd_prime(p), Errc::InvalidRing, "p must be an odd prime, got " + std::to_string(p));
  require(k >= 1, Errc::InvalidRing, "exponent k must be >= 1");
  Int modulus = 1;
  for (int i = 0; i < k; ++i) {
    require(modulus <= kMaxModulus / p, Errc::InvalidRing,
            "p^k exceeds the exact-integer range (2^31)");
    modulus *= p;
  }
  require(modulus < kMaxModulus, Errc::InvalidRing, "p^k exceeds the exact-integer range (2^31)");
  return Ring(RingKind::local_zpk, p, k, modulus);
}

Ring Ring::parse(std::string_view text) {
  if (text.starts_with("fp:")) return prime_field(parse_int(text.substr(3)));
  if (text.starts_with("zpk:")) {
    auto rest = text.substr(4);
    auto comma = rest.find(',');
    if (comma == std::string_view::npos) raise(Errc::Parse, "expected zpk:p,k");
    Int k = parse_int(rest.substr(comma + 1));
    require(k >= 1 && k <= 64, Errc::InvalidRing, "exponent out of range");
    return local(parse_int(rest.substr(0, comma)), static_cast<int>(k));
  }
  raise(Errc::Parse, "ring must be fp:p or zpk:p,k, got '" + std::string(text) + "'");
}

Int Ring::pow(Int base, std::uint64_t exponent) const noexcept {
  Int result = 1 % modulus_;
  base = reduce(base);
  while (exponent > 0) {
    if (exponent & 1u) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1u;
  }
  return result;
}

Int Ring::inv(Int a) const {
  a = reduce(a);
  if (!is_unit(a)) raise(Errc::NonUnitInverse, std::to_string(a) + " is not a unit in " + to_string());
  Int old_r = a, r = modulus_, old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  return reduce(old_s);
}

int Ring::valuation(Int a) const noexcept {
  a = reduce(a);
  if (a == 0) return k_;
  int v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

bool Ring::is_square_residue(Int a) const {
  a %= p_;
  if (a < 0) a += p_;
  if (a == 0) return true;
  Ring field = residue_field();
  return field.pow(a, static_cast<std::uint64_t>((p_ - 1) / 2)) == 1;
}

std::optional<Int> Ring::sqrt_residue(Int a) const {
  Ring f = residue_field();
  a = f.reduce(a);
  if (a == 0) return Int{0};
  if (!is_square_residue(a)) return std::nullopt;
  // Tonelli-Shanks over F_p.
  Int q = p_ - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (f.pow(z, static_cast<std::uint64_t>((p_ - 1) / 2)) != p_ - 1) ++z;
  Int m = s;
  Int c = f.pow(z, static_cast<std::uint64_t>(q));
  Int t = f.pow(a, static_cast<std::uint64_t>(q));
  Int r = f.pow(a, static_cast<std::uint64_t>((q + 1) / 2));
  while (t != 1) {
    Int i = 0;
    Int t2 = t;
    while (t2 != 1) {
      t2 = f.mul(t2, t2);
      ++i;
    }
    Int b = c;
    for (Int e = 0; e < m - i - 1; ++e) b = f.mul(b, b);
    m = i;
    c = f.mul(b, b);
    t = f.mul(t, c);
    r = f.mul(r, b);
  }
  return r;
}

std::string Ring::to_string() const {
  if (kind_ == RingKind::prime_field) return "fp:" + std::to_string(p_);
  return "zpk:" + std::to_string(p_) + "," + std::to_string(k_);
}

namespace {
void check_same(const RingElem& x, const RingElem& y) {
  if (!(x.ring == y.ring))
    raise(Errc::RingMismatch, x.ring.to_string() + " vs " + y.ring.to_string());
}
}  // namespace

RingElem operator+(const RingElem& x, const RingElem& y) {
  check_same(x, y);
  return {x.ring, x.ring.add(x.value, y.value)};
}
RingElem operator-(const RingElem& x, const RingElem& y) {
  check_same(x, y);
  return {x.ring, x.ring.sub(x.value, y.value)};
}
RingElem operator*(const RingElem& x, const RingElem& y) {
  check_same(x, y);
  return {x.ring, x.ring.mul(x.value, y.value)};
}
RingElem operator-(const RingElem& x) { return {x.ring, x.ring.neg(x.value)}; }

RingElem residue(const RingElem& x) { return {x.ring.residue_field(), x.ring.residue(x.value)}; }

RingElem lift(const RingElem& x, const Ring& target) {
  require(x.ring.p() == target.p(), Errc::RingMismatch, "lift target has a different prime");
  require(x.ring.is_field(), Errc::RingMismatch, "lift source must be a residue field");
  return {target, x.value};
}

Vec residue(const Ring& ring, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring.residue(v[i]);
  return out;
}

bool is_unimodular(const Ring& ring, const Vec& v) {
  for (Int x : v)
    if (ring.is_unit(x)) return true;
  return false;
}

}  // namespace isoform
