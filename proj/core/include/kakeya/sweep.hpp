#pragma once

#include <optional>
#include <vector>

#include "kakeya/geometry.hpp"

namespace kakeya {

// Vertical cross-section of the union at abscissa x: merged, sorted,
// pairwise disjoint closed intervals over the members whose x-range
// contains x.
std::vector<Interval> slice_intervals(const ParallelogramUnion& u, const Rat& x);

// Exact area of (union of members) intersected with the slab [xLo,xHi]xR.
// Event-driven sweep: between consecutive event abscissae (member borders
// and pairwise crossings of slice-endpoint lines) the merged slice length
// is affine in x, so each segment integrates as the endpoint average times
// the width; a midpoint evaluation guards the affineness assumption.
// Requires xLo < xHi and a nonempty union.
Rat union_measure(const ParallelogramUnion& u, const Rat& xLo, const Rat& xHi);

// Exact area of (union of members) ∩ q ∩ [xLo,xHi]xR: same sweep with every
// slice clipped to q's slice. Used for averages over a candidate
// parallelogram.
Rat union_measure_in(const ParallelogramUnion& u, const VParallelogram& q, const Rat& xLo,
                     const Rat& xHi);

namespace detail {
// Integer fast path for dyadic instances (all coordinates with power-of-two
// denominators and small scaled magnitudes); returns nullopt when the
// instance does not qualify, in which case the caller runs the general
// rational path. Exposed for cross-checking in tests.
std::optional<Rat> dyadic_measure(const ParallelogramUnion& u, const VParallelogram* clip,
                                  const Rat& xLo, const Rat& xHi);
Rat general_measure(const ParallelogramUnion& u, const VParallelogram* clip, const Rat& xLo,
                    const Rat& xHi);
}  // namespace detail

}  // namespace kakeya
