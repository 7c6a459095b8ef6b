#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kakeya/dyadic_tree.hpp"
#include "kakeya/geometry.hpp"

namespace kakeya {

// A pruned tree together with its leaf zero-fill up to height k: every
// extended-only vertex is a pruned leaf followed by trailing zeros, and
// every extended vertex below height k keeps at least one child.
struct ExtendedTree {
  DyadicTree pruned;
  DyadicTree extended;
  unsigned k = 0;
};

ExtendedTree extend_pruned(const DyadicTree& pruned, unsigned k);

// Height-preserving, descendance-preserving map from the full tree of
// height k into an extended tree, with the root fixed.
class StickyMap {
public:
  StickyMap(unsigned k, std::map<Vertex, Vertex> image)
      : k_(k), image_(std::move(image)) {}

  unsigned k() const { return k_; }
  const std::map<Vertex, Vertex>& image() const { return image_; }
  const Vertex& at(const Vertex& v) const;

  // Throws VerificationFailure unless the map is total on heights <= k,
  // height-preserving, sticky, root-fixed, and lands in ext.extended.
  void validate(const ExtendedTree& ext) const;

  friend bool operator==(const StickyMap& a, const StickyMap& b) = default;

private:
  unsigned k_;
  std::map<Vertex, Vertex> image_;
};

// Seeded top-down sampler: the two children of v map to the unique child of
// sigma(v) when it has one child in the extended tree, and to independent
// uniform choices when it has two. Deterministic per seed; the result is
// validated before returning.
StickyMap sticky_sample(const ExtendedTree& ext, std::uint64_t seed);

// All sticky maps into ext (small k only). Throws OracleTooLarge when the
// count would exceed maxCount.
std::vector<StickyMap> enumerate_sticky(const ExtendedTree& ext, std::size_t maxCount = 1u << 20);

// One certified point of the quarter bound: the nearest pruned ancestor,
// the stacked parallelogram P_x (vertical translate of the ancestor's
// canonical parallelogram, inside the first slab of the union), the full
// slab E_x inside the union, and the candidate Q (translate of the two-fold
// dilate of P_x) whose exact chi_{K2} average is at least 1/4.
struct Witness {
  Point x;
  Vertex prunedAncestor;
  VParallelogram Px;
  VParallelogram Ex;
  VParallelogram Q;
  Rat average;
};

struct KakeyaReport {
  unsigned N = 0;
  unsigned k = 0;
  StickyMap sigma;
  ParallelogramUnion K;  // E_{sigma(v)} over the 2^k height-k addresses
  Rat m1;                // |K ∩ [0,1]xR|
  Rat m2;                // |K ∩ [1,2]xR|
  std::uint64_t bestSeed = 0;
  unsigned trials = 1;
  std::vector<Witness> witnesses;

  Rat ratio() const { return m1 / m2; }
};

// Builds K_sigma: member v = b_0..b_k contributes the parallelogram with
// x in [0,2], bottom-left sum b_j 2^-j, slope sum a_j 2^-j for
// sigma(v) = a_0..a_k, and side 2^-k. The x = 0 slices must tile [0,1];
// m1 and m2 are computed exactly.
KakeyaReport build_kakeya(const ExtendedTree& ext, const StickyMap& sigma);

enum class SigmaObjective { MaxRatio, MaxM1, MinM2 };

// Best of `trials` seeded samples (seeds seedBase..seedBase+trials-1) under
// the objective, ties to the smaller seed. Trials run on a worker pool;
// the reduction is deterministic.
KakeyaReport search_sigma(const ExtendedTree& ext, unsigned trials, std::uint64_t seedBase,
                          SigmaObjective objective = SigmaObjective::MaxRatio,
                          unsigned workers = 1);

// Exhaustive optimum over all sticky maps; small k only.
KakeyaReport best_sigma_exhaustive(const ExtendedTree& ext,
                                   SigmaObjective objective = SigmaObjective::MaxRatio,
                                   std::size_t maxCount = 1u << 20);

// Certified witness for a point of the first slab; NotInK1 when x is not
// covered. Every claim in the witness is re-checked exactly.
Witness quarter_witness(const KakeyaReport& report, const ExtendedTree& ext, const Point& x);

// Deterministic sample of K1: midpoints of the slice intervals at the
// dyadic abscissae i*2^-gridExponent, i = 0..2^gridExponent.
std::vector<Point> sample_k1_points(const KakeyaReport& report, unsigned gridExponent);

}  // namespace kakeya
