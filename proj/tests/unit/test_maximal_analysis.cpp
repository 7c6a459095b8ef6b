#include <doctest.h>

#include "kakeya/maximal_analysis.hpp"
#include "kakeya/sweep.hpp"

using namespace kakeya;

namespace {

ParallelogramUnion unit_square_union() {
  return ParallelogramUnion{{VParallelogram{Rat(0), Rat(1), Rat(0), Rat(0), Rat(1)}}};
}

ExtendedTree pruned_complete(unsigned k) { return extend_pruned(DyadicTree::complete(k), k); }

std::vector<GeneratorSpec> caterpillar_specs(unsigned maxK) {
  // slopes 0 and 2^-k at every height: the dyadic-lacunary family
  std::vector<GeneratorSpec> specs;
  for (unsigned k = 1; k <= maxK; ++k) specs.push_back(SlopesSpec{k, {0, 1}});
  return specs;
}

std::vector<GeneratorSpec> complete_specs(unsigned maxK) {
  std::vector<GeneratorSpec> specs;
  for (unsigned k = 1; k <= maxK; ++k) {
    SlopesSpec s;
    s.k = k;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << k); ++j) s.j.push_back(j);
    specs.push_back(std::move(s));
  }
  return specs;
}

}  // namespace

TEST_SUITE("maximal_analysis") {

TEST_CASE("directions_of examples") {
  CHECK(directions_of(DyadicTree::from_bits({"0"})).slopes == std::vector<Rat>{Rat(0)});
  CHECK(directions_of(DyadicTree::from_bits({"0", "00", "01"})).slopes ==
        std::vector<Rat>{Rat(0), Rat(1, 2)});
  CHECK(directions_of(DyadicTree::complete(2)).slopes ==
        std::vector<Rat>{Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4)});
}

TEST_CASE("maximal_lower_bound examples") {
  ParallelogramUnion e = unit_square_union();
  VParallelogram self{Rat(0), Rat(1), Rat(0), Rat(0), Rat(1)};
  MaximalBound full = maximal_lower_bound(Point{Rat(1, 2), Rat(1, 2)}, e, {self});
  CHECK(full.value == Rat(1));

  VParallelogram shifted{Rat(1, 2), Rat(3, 2), Rat(0), Rat(0), Rat(1)};
  MaximalBound half = maximal_lower_bound(Point{Rat(3, 2), Rat(1, 2)}, e, {shifted});
  CHECK(half.value == Rat(1, 2));

  CHECK_THROWS_AS(maximal_lower_bound(Point{Rat(5), Rat(5)}, e, {self}), Error);
  CHECK_THROWS_AS(maximal_lower_bound(Point{Rat(1, 2), Rat(1, 2)}, e, {}), Error);
}

TEST_CASE("maximal_lower_bound is monotone in candidates and bounded by one") {
  ParallelogramUnion e = unit_square_union();
  Point x{Rat(1, 2), Rat(1, 2)};
  VParallelogram big{Rat(-1), Rat(2), Rat(-1), Rat(0), Rat(3)};
  VParallelogram tight{Rat(0), Rat(1), Rat(0), Rat(0), Rat(1)};
  MaximalBound one = maximal_lower_bound(x, e, {big});
  MaximalBound two = maximal_lower_bound(x, e, {big, tight});
  CHECK(two.value >= one.value);
  CHECK(two.value <= Rat(1));
  CHECK(two.bestCandidate == 1);
}

TEST_CASE("maximal_lower_bound is translation invariant") {
  ParallelogramUnion e = unit_square_union();
  Point x{Rat(1, 3), Rat(2, 3)};
  VParallelogram q{Rat(-1, 2), Rat(3, 2), Rat(-1, 4), Rat(1, 2), Rat(2)};
  Rat base = maximal_lower_bound(x, e, {q}).value;
  Point t{Rat(7, 5), Rat(-3, 2)};
  Rat moved = maximal_lower_bound(translate(x, t), translate(e, t), {translate(q, t)}).value;
  CHECK(base == moved);
}

TEST_CASE("witness candidates certify the quarter bound") {
  ExtendedTree ext = pruned_complete(2);
  KakeyaReport rep = search_sigma(ext, 32, 0);
  ParallelogramUnion k2;  // restrict members to the second slab via candidates
  for (const Point& x : sample_k1_points(rep, 4)) {
    Witness w = quarter_witness(rep, ext, x);
    // the quarter witness average equals the sweep-based candidate value on K2
    Rat avg = union_measure_in(rep.K, w.Q, Rat(1), Rat(2)) / w.Q.area();
    CHECK(avg == w.average);
    CHECK(avg >= Rat(1, 4));
  }
}

TEST_CASE("weak_level_set on the trivial report") {
  ExtendedTree ext = extend_pruned(DyadicTree::from_bits({"0"}), 0);
  KakeyaReport rep = build_kakeya(ext, sticky_sample(ext, 0));
  LevelSetBound ls = weak_level_set(rep);
  CHECK(ls.threshold == Rat(1, 4));
  CHECK(ls.measureLowerBound == Rat(1));
  CHECK(ls.pGrid == default_p_grid());
  REQUIRE(ls.entries.size() == 4);
  // m1 = 1: every root is 1, so the bound is exactly 1/4
  for (const auto& e : ls.entries) CHECK(e.lpLowerBoundDecimal.substr(0, 6) == "0.2500");
}

TEST_CASE("weak_level_set uses the report measures") {
  ExtendedTree ext = pruned_complete(2);
  KakeyaReport rep = search_sigma(ext, 64, 0);
  LevelSetBound ls = weak_level_set(rep);
  CHECK(ls.measureLowerBound == rep.m1);
  CHECK(ls.m2 == rep.m2);
  // p = 1 entry is (1/4) m1 exactly
  Rat quarterM1 = rep.m1 / Rat(4);
  std::string want = root_decimal(quarterM1, 1, 1, 30);
  CHECK(ls.entries[0].lpLowerBoundDecimal == want);
}

TEST_CASE("classify single direction") {
  DichotomyVerdict v = classify({CodeSpec{Vertex("0")}}, {1, 2, 3, 4, 5, 6, 7, 8}, {});
  CHECK(v.kind == VerdictKind::BoundedCertificate);
  CHECK(v.order == 1);
  CHECK(!v.caveatSingleIncrease);
  CHECK(v.truncationOnly);
  for (const auto& row : v.splitByDepth) CHECK(row.split == 0);
  CHECK(v.lacunarityOrderExtended <= 1);
}

TEST_CASE("classify dyadic lacunary directions") {
  ClassifyOptions opt;
  opt.trials = 8;
  DichotomyVerdict v = classify(caterpillar_specs(8), {1, 2, 3, 4, 5, 6, 7, 8}, opt);
  CHECK(v.kind == VerdictKind::BoundedCertificate);
  CHECK(v.order == 2);
  for (const auto& row : v.splitByDepth) CHECK(row.split == 1);
  CHECK(v.lacunarityOrderExtended <= 2);
}

TEST_CASE("classify complete trees") {
  ClassifyOptions opt;
  opt.trials = 8;
  opt.maxReportN = 3;
  DichotomyVerdict v = classify(complete_specs(6), {1, 2, 3, 4, 5, 6}, opt);
  CHECK(v.kind == VerdictKind::UnboundedEvidence);
  for (std::size_t i = 0; i < v.splitByDepth.size(); ++i)
    CHECK(v.splitByDepth[i].split == v.splitByDepth[i].depth);
  REQUIRE(v.kakeya.size() == 2);  // N = 2 and N = 3
  CHECK(v.kakeyaNs == std::vector<unsigned>{2, 3});
  CHECK(v.kakeyaKs == std::vector<unsigned>{2, 3});  // minimal depths
  for (const auto& rep : v.kakeya) CHECK(rep.ratio() > Rat(0));
}

TEST_CASE("classify single increase keeps the certificate with a caveat") {
  // codes only at height 3: split jumps 0 -> 1 once
  DichotomyVerdict v =
      classify({SlopesSpec{3, {0, 7}}}, {1, 2, 3, 4}, {});
  CHECK(v.kind == VerdictKind::BoundedCertificate);
  CHECK(v.caveatSingleIncrease);
  CHECK(v.order == 2);
}

TEST_CASE("classify rejects bad depth lists") {
  CHECK_THROWS_AS(classify({CodeSpec{Vertex("0")}}, {}, {}), Error);
  CHECK_THROWS_AS(classify({CodeSpec{Vertex("0")}}, {2, 2}, {}), Error);
  CHECK_THROWS_AS(classify({CodeSpec{Vertex("0")}}, {3, 1}, {}), Error);
}

TEST_CASE("classify is deterministic") {
  ClassifyOptions opt;
  opt.trials = 16;
  opt.seed = 7;
  opt.maxReportN = 2;
  DichotomyVerdict a = classify(complete_specs(4), {1, 2, 3, 4}, opt);
  DichotomyVerdict b = classify(complete_specs(4), {1, 2, 3, 4}, opt);
  REQUIRE(a.kakeya.size() == b.kakeya.size());
  for (std::size_t i = 0; i < a.kakeya.size(); ++i) {
    CHECK(a.kakeya[i].m1 == b.kakeya[i].m1);
    CHECK(a.kakeya[i].m2 == b.kakeya[i].m2);
    CHECK(a.kakeya[i].bestSeed == b.kakeya[i].bestSeed);
  }
}

}  // TEST_SUITE
