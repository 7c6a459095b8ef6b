#include "kakeya/kakeya_set.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <thread>

#include "kakeya/errors.hpp"
#include "kakeya/sweep.hpp"

namespace kakeya {

ExtendedTree extend_pruned(const DyadicTree& pruned, unsigned k) {
  if (pruned.empty()) raise(Errc::EmptySet, "extend_pruned of empty tree");
  if (!pruned.is_ancestor_closed()) raise(Errc::InvalidInput, "extend_pruned needs ancestor-closed tree");
  if (pruned.max_height() > k) raise(Errc::InvalidHeight, "pruned tree taller than k");
  std::set<Vertex> out(pruned.vertices().begin(), pruned.vertices().end());
  for (const Vertex& leaf : pruned.leaves()) {
    std::string bits = leaf.bits();
    while (bits.size() <= k) {
      bits += '0';
      out.insert(Vertex(bits));
    }
  }
  ExtendedTree ext{pruned, DyadicTree(std::move(out)), k};
  for (const Vertex& v : ext.extended)
    if (v.height() < k && ext.extended.child_count(v) == 0)
      raise(Errc::VerificationFailure, "extended tree has a short leaf at " + v.bits());
  return ext;
}

const Vertex& StickyMap::at(const Vertex& v) const {
  auto it = image_.find(v);
  if (it == image_.end()) raise(Errc::InvalidVertex, "sticky map undefined at " + v.bits());
  return it->second;
}

void StickyMap::validate(const ExtendedTree& ext) const {
  if (ext.k != k_) raise(Errc::VerificationFailure, "sticky map height mismatch");
  DyadicTree full = DyadicTree::complete(k_);
  if (image_.size() != full.size())
    raise(Errc::VerificationFailure, "sticky map not total on the full tree");
  for (const Vertex& v : full) {
    const Vertex& w = at(v);
    if (w.height() != v.height())
      raise(Errc::VerificationFailure, "sticky map not height-preserving at " + v.bits());
    if (!ext.extended.contains(w))
      raise(Errc::VerificationFailure, "sticky image outside the extended tree at " + v.bits());
    if (v.is_root()) {
      if (!w.is_root()) raise(Errc::VerificationFailure, "sticky map moves the root");
    } else if (!(at(v.parent()) == w.parent())) {
      raise(Errc::VerificationFailure, "sticky map breaks descendance at " + v.bits());
    }
  }
}

StickyMap sticky_sample(const ExtendedTree& ext, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  DyadicTree full = DyadicTree::complete(ext.k);
  std::map<Vertex, Vertex> image;
  image.emplace(Vertex::root(), Vertex::root());
  for (unsigned h = 0; h < ext.k; ++h) {
    for (const Vertex& v : full.at_height(h)) {
      const Vertex& w = image.at(v);
      bool c0 = ext.extended.has_child(w, 0);
      bool c1 = ext.extended.has_child(w, 1);
      if (!c0 && !c1)
        raise(Errc::VerificationFailure, "extended tree ends early at " + w.bits());
      for (int bit = 0; bit < 2; ++bit) {
        int pick = c0 && c1 ? static_cast<int>(engine() & 1) : (c0 ? 0 : 1);
        image.emplace(v.child(bit), w.child(pick));
      }
    }
  }
  StickyMap sigma(ext.k, std::move(image));
  sigma.validate(ext);
  return sigma;
}

std::vector<StickyMap> enumerate_sticky(const ExtendedTree& ext, std::size_t maxCount) {
  DyadicTree full = DyadicTree::complete(ext.k);
  std::vector<Vertex> order;  // parents in height-then-lex order
  for (unsigned h = 0; h < ext.k; ++h)
    for (const Vertex& v : full.at_height(h)) order.push_back(v);

  std::vector<StickyMap> out;
  std::map<Vertex, Vertex> image;
  image.emplace(Vertex::root(), Vertex::root());

  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == order.size()) {
      if (out.size() >= maxCount) raise(Errc::OracleTooLarge, "too many sticky maps to enumerate");
      StickyMap sigma(ext.k, image);
      sigma.validate(ext);
      out.push_back(std::move(sigma));
      return;
    }
    const Vertex& v = order[idx];
    const Vertex& w = image.at(v);
    bool c0 = ext.extended.has_child(w, 0);
    bool c1 = ext.extended.has_child(w, 1);
    std::vector<int> picks;
    if (c0) picks.push_back(0);
    if (c1) picks.push_back(1);
    if (picks.empty()) raise(Errc::VerificationFailure, "extended tree ends early at " + w.bits());
    for (int p0 : picks) {
      for (int p1 : picks) {
        image.insert_or_assign(v.child(0), w.child(p0));
        image.insert_or_assign(v.child(1), w.child(p1));
        rec(idx + 1);
      }
    }
    image.erase(v.child(0));
    image.erase(v.child(1));
  };
  rec(0);
  return out;
}

KakeyaReport build_kakeya(const ExtendedTree& ext, const StickyMap& sigma) {
  sigma.validate(ext);
  unsigned k = ext.k;
  Rat side = Rat::pow2(k);
  DyadicTree full = DyadicTree::complete(k);

  ParallelogramUnion K;
  std::vector<Rat> bases;
  for (const Vertex& v : full.at_height(k)) {
    Rat base = v.slope();
    Rat slope = sigma.at(v).slope();
    K.members.push_back(VParallelogram{Rat(0), Rat(2), base, slope, side});
    bases.push_back(base);
  }
  // the x = 0 slices must tile [0,1]
  for (std::size_t i = 0; i < bases.size(); ++i)
    if (bases[i] != Rat(static_cast<long long>(i)) * side)
      raise(Errc::VerificationFailure, "slab slices at x = 0 do not tile [0,1]");

  Rat m1 = union_measure(K, Rat(0), Rat(1));
  Rat m2 = union_measure(K, Rat(1), Rat(2));
  if (m1.sign() <= 0 || m2.sign() <= 0)
    raise(Errc::VerificationFailure, "slab measures must be positive");
  unsigned n = split_number(ext.pruned).tree;
  return KakeyaReport{n, k, sigma, std::move(K), m1, m2, 0, 1, {}};
}

namespace {

bool better(SigmaObjective objective, const Rat& m1a, const Rat& m2a, const Rat& m1b,
            const Rat& m2b) {
  switch (objective) {
    case SigmaObjective::MaxRatio: return m1a * m2b > m1b * m2a;
    case SigmaObjective::MaxM1: return m1a > m1b;
    case SigmaObjective::MinM2: return m2a < m2b;
  }
  return false;
}

}  // namespace

KakeyaReport search_sigma(const ExtendedTree& ext, unsigned trials, std::uint64_t seedBase,
                          SigmaObjective objective, unsigned workers) {
  if (trials < 1) raise(Errc::InvalidInput, "search_sigma needs at least one trial");
  std::vector<std::pair<Rat, Rat>> measures(trials);

  auto evaluate = [&](unsigned lo, unsigned hi) {
    for (unsigned i = lo; i < hi; ++i) {
      KakeyaReport r = build_kakeya(ext, sticky_sample(ext, seedBase + i));
      measures[i] = {r.m1, r.m2};
    }
  };
  unsigned pool = std::max(1u, std::min(workers, trials));
  if (pool == 1) {
    evaluate(0, trials);
  } else {
    std::vector<std::thread> threads;
    unsigned chunk = (trials + pool - 1) / pool;
    for (unsigned t = 0; t < pool; ++t) {
      unsigned lo = t * chunk;
      unsigned hi = std::min(trials, lo + chunk);
      if (lo < hi) threads.emplace_back(evaluate, lo, hi);
    }
    for (auto& th : threads) th.join();
  }

  unsigned best = 0;
  for (unsigned i = 1; i < trials; ++i)
    if (better(objective, measures[i].first, measures[i].second, measures[best].first,
               measures[best].second))
      best = i;

  KakeyaReport report = build_kakeya(ext, sticky_sample(ext, seedBase + best));
  report.bestSeed = seedBase + best;
  report.trials = trials;
  return report;
}

KakeyaReport best_sigma_exhaustive(const ExtendedTree& ext, SigmaObjective objective,
                                   std::size_t maxCount) {
  std::vector<StickyMap> all = enumerate_sticky(ext, maxCount);
  const StickyMap* bestSigma = nullptr;
  Rat bm1, bm2;
  std::size_t bestIndex = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    KakeyaReport r = build_kakeya(ext, all[i]);
    if (!bestSigma || better(objective, r.m1, r.m2, bm1, bm2)) {
      bestSigma = &all[i];
      bm1 = r.m1;
      bm2 = r.m2;
      bestIndex = i;
    }
  }
  if (!bestSigma) raise(Errc::EmptySet, "no sticky map found");
  KakeyaReport report = build_kakeya(ext, *bestSigma);
  report.bestSeed = bestIndex;
  report.trials = static_cast<unsigned>(all.size());
  return report;
}

Witness quarter_witness(const KakeyaReport& report, const ExtendedTree& ext, const Point& x) {
  if (x.x.sign() < 0 || x.x > Rat(1)) raise(Errc::NotInK1, "point outside the first slab");
  DyadicTree full = DyadicTree::complete(report.k);
  std::vector<Vertex> addresses = full.at_height(report.k);

  const Vertex* address = nullptr;
  for (std::size_t i = 0; i < addresses.size(); ++i) {
    if (report.K.members[i].contains(x)) {
      address = &addresses[i];
      break;
    }
  }
  if (!address) raise(Errc::NotInK1, "point not covered by the union");

  Vertex a = report.sigma.at(*address);
  unsigned l = a.height();
  while (l > 0 && !ext.pruned.contains(a.prefix(l))) --l;
  if (!ext.pruned.contains(a.prefix(l)))
    raise(Errc::VerificationFailure, "pruned tree misses the root ancestor");
  Vertex ancestor = a.prefix(l);
  if (ancestor.slope() != a.slope())
    raise(Errc::VerificationFailure, "extended image is not a zero fill of its pruned ancestor");

  Rat baseL = address->prefix(l).slope();
  Rat slope = a.slope();
  Rat sideL = Rat::pow2(l);
  VParallelogram px{Rat(0), Rat(1), baseL, slope, sideL};
  VParallelogram exPar{Rat(0), Rat(2), baseL, slope, sideL};
  VParallelogram q{Rat(0), Rat(2), baseL, slope, Rat(2) * sideL};

  auto check = [](bool ok, const char* msg) {
    if (!ok) raise(Errc::VerificationFailure, std::string("quarter witness: ") + msg);
  };
  check(px.contains(x), "point outside P_x");
  check(exPar.contains(x), "point outside E_x");
  check(q.contains(exPar), "E_x outside the two-fold dilate candidate");
  // Q is a translate of the two-fold dilate of P_x
  VParallelogram dil = dilate(px, Rat(2));
  check(translate(dil, Point{Rat(0), baseL - dil.yBottomLeft}) == q,
        "candidate is not a translate of 2 P_x");
  // the sticky structure stacks members exactly onto P_x and E_x
  check(union_measure_in(report.K, px, Rat(0), Rat(1)) == px.area(), "P_x not inside K1");
  check(union_measure_in(report.K, exPar, Rat(0), Rat(2)) == exPar.area(), "E_x not inside K");

  Rat average = union_measure_in(report.K, q, Rat(1), Rat(2)) / q.area();
  check(average >= Rat(1, 4), "chi_{K2} average below 1/4");
  return Witness{x, ancestor, px, exPar, q, average};
}

std::vector<Point> sample_k1_points(const KakeyaReport& report, unsigned gridExponent) {
  if (gridExponent > 24) raise(Errc::InvalidInput, "sample grid too fine");
  std::vector<Point> out;
  Rat step = Rat::pow2(gridExponent);
  Rat half(1, 2);
  for (std::uint64_t i = 0; i <= (std::uint64_t{1} << gridExponent); ++i) {
    Rat x = Rat(static_cast<long long>(i)) * step;
    for (const Interval& slice : slice_intervals(report.K, x))
      out.push_back(Point{x, (slice.lo + slice.hi) * half});
  }
  return out;
}

}  // namespace kakeya
