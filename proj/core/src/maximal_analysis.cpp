#include "kakeya/maximal_analysis.hpp"

#include <algorithm>

#include "kakeya/errors.hpp"
#include "kakeya/sweep.hpp"

namespace kakeya {

DirectionSet directions_of(const DyadicTree& tree) {
  if (!tree.is_ancestor_closed()) raise(Errc::InvalidInput, "directions_of needs ancestor-closed tree");
  std::vector<Rat> slopes;
  for (const Vertex& v : tree) slopes.push_back(v.slope());
  std::sort(slopes.begin(), slopes.end());
  slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
  return DirectionSet{std::move(slopes), tree.max_height()};
}

MaximalBound maximal_lower_bound(const Point& x, const ParallelogramUnion& e,
                                 const std::vector<VParallelogram>& candidates) {
  if (candidates.empty()) raise(Errc::EmptySet, "maximal_lower_bound needs candidates");
  MaximalBound best{Rat(0), 0};
  bool haveBest = false;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const VParallelogram& q = candidates[i];
    if (!q.contains(x)) raise(Errc::InvalidCandidate, "candidate does not contain the point");
    Rat value = union_measure_in(e, q, q.x0, q.x1) / q.area();
    if (!haveBest || value > best.value) {
      best = {value, i};
      haveBest = true;
    }
  }
  return best;
}

const std::vector<Rat>& default_p_grid() {
  static const std::vector<Rat> grid{Rat(1), Rat(5, 4), Rat(3, 2), Rat(2)};
  return grid;
}

LevelSetBound weak_level_set(const KakeyaReport& report) {
  return weak_level_set(report, default_p_grid());
}

LevelSetBound weak_level_set(const KakeyaReport& report, const std::vector<Rat>& pGrid) {
  LevelSetBound out;
  out.threshold = Rat(1, 4);
  out.measureLowerBound = report.m1;
  out.m2 = report.m2;
  out.pGrid = pGrid;
  // 10^30 / 4 stays integral, so the quarter threshold folds into the scale
  mpz_class quarterScale;
  mpz_ui_pow_ui(quarterScale.get_mpz_t(), 10, 28);
  quarterScale *= 25;
  for (const Rat& p : pGrid) {
    if (p.sign() <= 0) raise(Errc::InvalidInput, "p grid entries must be positive");
    // 1/p = den(p)/num(p)
    unsigned long b = static_cast<unsigned long>(p.den().get_ui());
    unsigned long a = static_cast<unsigned long>(p.num().get_ui());
    auto scaled_decimal = [&](const Rat& z) {
      mpq_class zp;
      mpz_pow_ui(mpq_numref(zp.get_mpq_t()), z.num().get_mpz_t(), b);
      mpz_pow_ui(mpq_denref(zp.get_mpq_t()), z.den().get_mpz_t(), b);
      zp.canonicalize();
      mpz_class scaled = floor_root_scaled(Rat(zp), a, quarterScale);
      std::string s = scaled.get_str();
      if (s.size() <= 30) s.insert(0, 31 - s.size(), '0');
      s.insert(s.size() - 30, ".");
      return s;
    };
    out.entries.push_back(LevelSetEntry{p, scaled_decimal(report.m1),
                                        scaled_decimal(report.m1 / report.m2)});
  }
  return out;
}

namespace {

unsigned max_split_over_classes(const DirectionForest& forest) {
  unsigned best = 0;
  for (const auto& [cls, dt] : forest.byClass) best = std::max(best, split_number(dt.tree).tree);
  return best;
}

}  // namespace

DichotomyVerdict classify(const std::vector<GeneratorSpec>& generators,
                          const std::vector<unsigned>& depths, const ClassifyOptions& options) {
  if (depths.empty()) raise(Errc::InvalidInput, "classify needs at least one depth");
  for (std::size_t i = 1; i < depths.size(); ++i)
    if (depths[i] <= depths[i - 1]) raise(Errc::InvalidInput, "classify depths must increase");

  std::vector<GeneratorRecord> records = process_generators(generators, options.maxK);

  DichotomyVerdict verdict;
  std::map<int, ClassSplits> perClass;
  for (unsigned depth : depths) {
    DirectionForest forest = build_direction_tree(records, depth);
    unsigned maxSplit = 0;
    for (const auto& [cls, dt] : forest.byClass) {
      unsigned s = split_number(dt.tree).tree;
      maxSplit = std::max(maxSplit, s);
      auto& row = perClass[cls];
      row.symmetryClass = cls;
      row.splits.push_back(DepthSplit{depth, s});
    }
    verdict.splitByDepth.push_back(DepthSplit{depth, maxSplit});
  }
  for (auto& [cls, row] : perClass) verdict.perClass.push_back(std::move(row));

  unsigned increases = 0;
  for (std::size_t i = 1; i < verdict.splitByDepth.size(); ++i)
    if (verdict.splitByDepth[i].split > verdict.splitByDepth[i - 1].split) ++increases;

  if (increases < 2) {
    verdict.kind = VerdictKind::BoundedCertificate;
    verdict.caveatSingleIncrease = (increases == 1);
    unsigned n = verdict.splitByDepth.back().split;
    verdict.order = n + 1;
    // Lemma-2 shape check on the extension of the deepest tested truncation
    unsigned deepest = depths.back();
    DirectionForest forest = build_direction_tree(records, deepest);
    unsigned lac = 0;
    for (const auto& [cls, dt] : forest.byClass)
      lac = std::max(lac, lacunarity_order(extend(dt.tree, deepest)));
    verdict.lacunarityOrderExtended = lac;
    if (lac > verdict.order)
      raise(Errc::VerificationFailure, "extension order exceeds the certificate order");
    return verdict;
  }

  verdict.kind = VerdictKind::UnboundedEvidence;
  unsigned maxAchieved = verdict.splitByDepth.back().split;
  unsigned nCap = std::min(maxAchieved, options.maxReportN);
  for (unsigned n = 2; n <= nCap; ++n) {
    // minimal k whose truncation reaches split n (Lemma-1 style), taking the
    // first symmetry class attaining it
    for (unsigned k = 1; k <= depths.back(); ++k) {
      DirectionForest forest = build_direction_tree(records, k);
      const DirectionTree* hit = nullptr;
      for (const auto& [cls, dt] : forest.byClass) {
        if (split_number(dt.tree).tree >= n) {
          hit = &dt;
          break;
        }
      }
      if (!hit) continue;
      DyadicTree pruned = prune_bateman(hit->tree, n);
      ExtendedTree ext = extend_pruned(pruned, k);
      KakeyaReport report =
          search_sigma(ext, options.trials, options.seed, SigmaObjective::MaxRatio, options.workers);
      verdict.kakeyaNs.push_back(n);
      verdict.kakeyaKs.push_back(k);
      verdict.kakeya.push_back(std::move(report));
      break;
    }
  }
  return verdict;
}

}  // namespace kakeya
