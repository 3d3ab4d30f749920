#pragma once

#include <cstddef>

#include "isoform/ring.hpp"

namespace isoform::detail {

// Projective points of F_p^n, one representative each: leading nonzero
// coordinate 1, ordered by the leading position, then odometer order with the
// last coordinate fastest. Returns true if `visit` asked to stop.
template <typename Visit>
bool scan_projective(std::size_t n, Int p, Visit&& visit) {
  for (std::size_t lead = 0; lead < n; ++lead) {
    Vec v(n, 0);
    v[lead] = 1;
    for (;;) {
      if (visit(v)) return true;
      bool carry = true;
      for (std::size_t i = n; carry && i > lead + 1;) {
        --i;
        if (++v[i] < p) {
          carry = false;
        } else {
          v[i] = 0;
        }
      }
      if (carry) break;
    }
  }
  return false;
}

// All vectors of F_p^n in odometer order (last coordinate fastest).
template <typename Visit>
bool scan_all(std::size_t n, Int p, Visit&& visit) {
  Vec v(n, 0);
  for (;;) {
    if (visit(v)) return true;
    bool carry = true;
    for (std::size_t i = n; carry && i > 0;) {
      --i;
      if (++v[i] < p) {
        carry = false;
      } else {
        v[i] = 0;
      }
    }
    if (carry) return false;
  }
}

}  // namespace isoform::detail
