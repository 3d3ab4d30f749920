#pragma once

#include <cstdint>
#include <random>

#include "isoform/matrix.hpp"

namespace isoform {

/// All randomized routines draw from this engine with an explicit seed, so
/// results are reproducible and independent of threading.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection; platform independent.
Int uniform_below(Rng& rng, Int bound);
Int random_element(const Ring& ring, Rng& rng);
Int random_unit(const Ring& ring, Rng& rng);
Vec random_vector(const Ring& ring, std::size_t n, Rng& rng);
Matrix random_matrix(const Ring& ring, std::size_t rows, std::size_t cols, Rng& rng);
/// Uniform among matrices with invertible residue (rejection sampling).
Matrix random_invertible(const Ring& ring, std::size_t n, Rng& rng);

}  // namespace isoform
