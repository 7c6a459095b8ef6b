#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kakeya/basis_pipeline.hpp"
#include "kakeya/kakeya_set.hpp"

namespace kakeya {

// Distinct direction values of a tree's vertices, sorted ascending.
struct DirectionSet {
  std::vector<Rat> slopes;
  unsigned sourceDepth = 0;
};

DirectionSet directions_of(const DyadicTree& tree);

struct MaximalBound {
  Rat value;
  std::size_t bestCandidate = 0;
};

// Certified lower bound for the maximal operator at x on the indicator of
// the union: the largest exact average area(E ∩ Q)/area(Q) over the finite
// candidate set. Every candidate must contain x (InvalidCandidate), and the
// candidate list must be nonempty (EmptySet).
MaximalBound maximal_lower_bound(const Point& x, const ParallelogramUnion& e,
                                 const std::vector<VParallelogram>& candidates);

// Exact data of the weak-type level-set bound |{M chi_{K2} >= 1/4}| >= m1,
// with the p-th roots rendered as truncated 30-digit decimals and the exact
// (threshold, measure) pair kept symbolic.
struct LevelSetEntry {
  Rat p;
  std::string lpLowerBoundDecimal;  // (1/4) * m1^(1/p)
  std::string ratioDecimal;         // (m1/m2)^(1/p) / 4
};

struct LevelSetBound {
  Rat threshold;
  Rat measureLowerBound;
  Rat m2;
  std::vector<Rat> pGrid;
  std::vector<LevelSetEntry> entries;
};

const std::vector<Rat>& default_p_grid();  // {1, 5/4, 3/2, 2}

LevelSetBound weak_level_set(const KakeyaReport& report);
LevelSetBound weak_level_set(const KakeyaReport& report, const std::vector<Rat>& pGrid);

enum class VerdictKind { BoundedCertificate, UnboundedEvidence };

struct DepthSplit {
  unsigned depth = 0;
  unsigned split = 0;
};

struct ClassSplits {
  int symmetryClass = 0;
  std::vector<DepthSplit> splits;
};

// Outcome of the dichotomy analysis on the tested truncations. A bounded
// certificate records the lacunarity order N+1 with the extension's
// measured order; unbounded evidence attaches one searched report per
// achieved split value N (pruned at the minimal depth reaching N). The
// verdict never extrapolates beyond the tested depths.
struct DichotomyVerdict {
  VerdictKind kind = VerdictKind::BoundedCertificate;
  std::vector<DepthSplit> splitByDepth;  // max over symmetry classes
  std::vector<ClassSplits> perClass;
  unsigned order = 0;                    // certificate: N+1
  unsigned lacunarityOrderExtended = 0;  // certificate: order of the extension
  bool caveatSingleIncrease = false;
  bool truncationOnly = true;
  std::vector<unsigned> kakeyaNs;
  std::vector<unsigned> kakeyaKs;
  std::vector<KakeyaReport> kakeya;
};

struct ClassifyOptions {
  unsigned trials = 256;
  std::uint64_t seed = 0;
  unsigned maxReportN = 6;
  unsigned maxK = 16;
  unsigned workers = 1;
};

// Builds the per-class direction trees at every tested depth, tabulates the
// split values, and decides: a split profile that increases at least twice
// is unbounded evidence; otherwise the constant bound N yields a bounded
// certificate of order N+1 (with a caveat flag when a single increase was
// seen).
DichotomyVerdict classify(const std::vector<GeneratorSpec>& generators,
                          const std::vector<unsigned>& depths, const ClassifyOptions& options);

}  // namespace kakeya
