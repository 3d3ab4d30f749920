#pragma once

#include <cstddef>
#include <functional>

namespace isoform {

/// Worker count from ISOFORM_THREADS (0 = serial); hardware concurrency when unset.
std::size_t configured_threads();

/// Runs body(i) for i in [0, count) on up to configured_threads() workers.
/// Callers write results into per-index slots so merge order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace isoform
