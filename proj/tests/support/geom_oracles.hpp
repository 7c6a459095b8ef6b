#pragma once

// Independent measure oracles for the sweep engine. The inclusion-exclusion
// route goes through convex polygon clipping and the shoelace formula, the
// Monte-Carlo route through plain double sampling; neither shares code with
// the sweep.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kakeya/geometry.hpp"

namespace oracles {

using kakeya::Point;
using kakeya::Rat;
using kakeya::VParallelogram;

// Sutherland-Hodgman clip of a convex polygon by the halfplane n.p <= c.
inline std::vector<Point> clip_halfplane(const std::vector<Point>& poly, const Rat& nx,
                                         const Rat& ny, const Rat& c) {
  std::vector<Point> out;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    Rat da = nx * a.x + ny * a.y - c;
    Rat db = nx * b.x + ny * b.y - c;
    bool ina = da.sign() <= 0;
    bool inb = db.sign() <= 0;
    if (ina) out.push_back(a);
    if (ina != inb) {
      Rat t = da / (da - db);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

inline Rat polygon_area(const std::vector<Point>& poly) {
  if (poly.size() < 3) return Rat(0);
  Rat s(0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return s.abs() / Rat(2);
}

inline std::vector<Point> vp_points(const VParallelogram& p) {
  auto c = p.corners();
  return {c[0], c[1], c[2], c[3]};
}

// exact area of the intersection of parallelograms, via repeated clipping
inline Rat intersection_area(const std::vector<const VParallelogram*>& ps) {
  std::vector<Point> poly = vp_points(*ps[0]);
  for (std::size_t i = 1; i < ps.size() && !poly.empty(); ++i) {
    for (const auto& h : ps[i]->to_polygon().halfplanes())
      poly = clip_halfplane(poly, h.nx, h.ny, h.c);
  }
  return polygon_area(poly);
}

// inclusion-exclusion over <= 3 members (full x-range)
inline Rat inclusion_exclusion_area(const std::vector<VParallelogram>& ms) {
  Rat total(0);
  std::size_t n = ms.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<const VParallelogram*> sel;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) sel.push_back(&ms[i]);
    Rat a = sel.size() == 1 ? sel[0]->area() : intersection_area(sel);
    if (sel.size() % 2 == 1)
      total += a;
    else
      total -= a;
  }
  return total;
}

struct MonteCarlo {
  double estimate;
  double sigma;
};

// union area estimate over the bounding box of the members
inline MonteCarlo monte_carlo_union_area(const std::vector<VParallelogram>& ms, std::uint64_t seed,
                                         std::size_t samples) {
  double xLo = 1e300, xHi = -1e300, yLo = 1e300, yHi = -1e300;
  for (const auto& m : ms) {
    auto px = m.proj_x();
    auto py = m.proj_y();
    xLo = std::min(xLo, px.lo.to_double());
    xHi = std::max(xHi, px.hi.to_double());
    yLo = std::min(yLo, py.lo.to_double());
    yHi = std::max(yHi, py.hi.to_double());
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    double x = uniform(xLo, xHi);
    double y = uniform(yLo, yHi);
    for (const auto& m : ms) {
      double mx0 = m.x0.to_double(), mx1 = m.x1.to_double();
      if (x < mx0 || x > mx1) continue;
      double bottom = m.yBottomLeft.to_double() + m.slope.to_double() * (x - mx0);
      if (y >= bottom && y <= bottom + m.sideLength.to_double()) {
        ++hits;
        break;
      }
    }
  }
  double box = (xHi - xLo) * (yHi - yLo);
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  double sigma = box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return {box * p, sigma};
}

}  // namespace oracles
