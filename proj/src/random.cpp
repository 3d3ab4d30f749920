#include "isoform/random.hpp"

namespace isoform {

Int uniform_below(Rng& rng, Int bound) {
  const auto b = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<Int>(x % b);
}

Int random_element(const Ring& ring, Rng& rng) { return uniform_below(rng, ring.modulus()); }

Int random_unit(const Ring& ring, Rng& rng) {
  for (;;) {
    const Int x = random_element(ring, rng);
    if (ring.is_unit(x)) return x;
  }
}

Vec random_vector(const Ring& ring, std::size_t n, Rng& rng) {
  Vec v(n);
  for (Int& x : v) x = random_element(ring, rng);
  return v;
}

Matrix random_matrix(const Ring& ring, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, random_element(ring, rng));
  return m;
}

Matrix random_invertible(const Ring& ring, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(ring, n, n, rng);
    if (is_invertible_matrix(m)) return m;
  }
}

}  // namespace isoform
