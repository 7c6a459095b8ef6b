#include "kakeya/geometry.hpp"

#include <algorithm>

#include "kakeya/errors.hpp"

namespace kakeya {

Rat cross(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

namespace {

bool point_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

Rat signed_area_twice(const std::vector<Point>& v) {
  Rat s(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return s;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) {
  // drop consecutive duplicates (including the wrap pair)
  std::vector<Point> v;
  for (const Point& p : vertices)
    if (v.empty() || !(v.back() == p)) v.push_back(p);
  while (v.size() > 1 && v.front() == v.back()) v.pop_back();
  if (v.size() < 3) raise(Errc::InvalidInput, "polygon needs at least three distinct vertices");

  Rat area2 = signed_area_twice(v);
  if (area2.sign() == 0) raise(Errc::InvalidInput, "degenerate polygon with zero area");
  if (area2.sign() < 0) std::reverse(v.begin(), v.end());

  // elide collinear middle vertices
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() > 2; ++i) {
      const Point& prev = v[(i + v.size() - 1) % v.size()];
      const Point& next = v[(i + 1) % v.size()];
      if (cross(prev, v[i], next).sign() == 0) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) raise(Errc::InvalidInput, "degenerate polygon after collinear elision");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& prev = v[(i + v.size() - 1) % v.size()];
    const Point& next = v[(i + 1) % v.size()];
    if (cross(prev, v[i], next).sign() <= 0)
      raise(Errc::InvalidInput, "polygon is not strictly convex");
  }

  // canonical start: lexicographically smallest vertex
  auto first = std::min_element(v.begin(), v.end(), point_less);
  std::rotate(v.begin(), first, v.end());
  verts_ = std::move(v);
}

Rat ConvexPolygon::area() const { return signed_area_twice(verts_) / Rat(2); }

bool ConvexPolygon::contains(const Point& p) const {
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    const Point& a = verts_[i];
    const Point& b = verts_[(i + 1) % verts_.size()];
    if (cross(a, b, p).sign() < 0) return false;
  }
  return true;
}

bool ConvexPolygon::contains(const ConvexPolygon& inner) const {
  for (const Point& p : inner.vertices())
    if (!contains(p)) return false;
  return true;
}

Interval ConvexPolygon::proj_x() const {
  Rat lo = verts_[0].x, hi = verts_[0].x;
  for (const Point& p : verts_) {
    lo = min(lo, p.x);
    hi = max(hi, p.x);
  }
  return {lo, hi};
}

Interval ConvexPolygon::proj_y() const {
  Rat lo = verts_[0].y, hi = verts_[0].y;
  for (const Point& p : verts_) {
    lo = min(lo, p.y);
    hi = max(hi, p.y);
  }
  return {lo, hi};
}

std::vector<ConvexPolygon::Halfplane> ConvexPolygon::halfplanes() const {
  std::vector<Halfplane> out;
  out.reserve(verts_.size());
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    const Point& a = verts_[i];
    const Point& b = verts_[(i + 1) % verts_.size()];
    Rat nx = b.y - a.y;
    Rat ny = a.x - b.x;
    out.push_back({nx, ny, nx * a.x + ny * a.y});
  }
  return out;
}

VParallelogram::VParallelogram(Rat x0_, Rat x1_, Rat yBL, Rat slope_, Rat side)
    : x0(std::move(x0_)), x1(std::move(x1_)), yBottomLeft(std::move(yBL)),
      slope(std::move(slope_)), sideLength(std::move(side)) {
  if (!(x0 < x1)) raise(Errc::InvalidInput, "parallelogram needs x0 < x1");
  if (sideLength.sign() <= 0) raise(Errc::InvalidInput, "parallelogram needs positive side length");
}

std::array<Point, 4> VParallelogram::corners() const {
  Rat yr = bottom_at(x1);
  return {Point{x0, yBottomLeft}, Point{x1, yr}, Point{x1, yr + sideLength},
          Point{x0, yBottomLeft + sideLength}};
}

ConvexPolygon VParallelogram::to_polygon() const {
  auto c = corners();
  return ConvexPolygon({c[0], c[1], c[2], c[3]});
}

bool VParallelogram::contains(const Point& p) const {
  if (p.x < x0 || p.x > x1) return false;
  Rat b = bottom_at(p.x);
  return p.y >= b && p.y <= b + sideLength;
}

bool VParallelogram::contains(const VParallelogram& q) const {
  for (const Point& p : q.corners())
    if (!contains(p)) return false;
  return true;
}

Interval VParallelogram::proj_y() const {
  Rat yr = bottom_at(x1);
  return {min(yBottomLeft, yr), max(yBottomLeft, yr) + sideLength};
}

Point translate(const Point& p, const Point& t) { return {p.x + t.x, p.y + t.y}; }

ConvexPolygon translate(const ConvexPolygon& s, const Point& t) {
  std::vector<Point> v;
  v.reserve(s.size());
  for (const Point& p : s.vertices()) v.push_back(translate(p, t));
  return ConvexPolygon(std::move(v));
}

VParallelogram translate(const VParallelogram& s, const Point& t) {
  return {s.x0 + t.x, s.x1 + t.x, s.yBottomLeft + t.y, s.slope, s.sideLength};
}

ParallelogramUnion translate(const ParallelogramUnion& s, const Point& t) {
  ParallelogramUnion out;
  out.members.reserve(s.members.size());
  for (const auto& m : s.members) out.members.push_back(translate(m, t));
  return out;
}

namespace {
void require_positive_dilation(const Rat& r) {
  if (r.sign() <= 0) raise(Errc::InvalidDilation, "dilation factor must be positive");
}
}  // namespace

Point dilate(const Point& p, const Rat& r) {
  require_positive_dilation(r);
  return {p.x * r, p.y * r};
}

ConvexPolygon dilate(const ConvexPolygon& s, const Rat& r) {
  require_positive_dilation(r);
  std::vector<Point> v;
  v.reserve(s.size());
  for (const Point& p : s.vertices()) v.push_back({p.x * r, p.y * r});
  return ConvexPolygon(std::move(v));
}

VParallelogram dilate(const VParallelogram& s, const Rat& r) {
  require_positive_dilation(r);
  return {s.x0 * r, s.x1 * r, s.yBottomLeft * r, s.slope, s.sideLength * r};
}

ParallelogramUnion dilate(const ParallelogramUnion& s, const Rat& r) {
  ParallelogramUnion out;
  out.members.reserve(s.members.size());
  for (const auto& m : s.members) out.members.push_back(dilate(m, r));
  return out;
}

std::pair<Interval, Interval> projections(const ConvexPolygon& s) {
  return {s.proj_x(), s.proj_y()};
}

std::pair<Interval, Interval> projections(const VParallelogram& s) {
  return {s.proj_x(), s.proj_y()};
}

std::optional<Point> contains_translate_of_dilate(const ConvexPolygon& outer,
                                                  const ConvexPolygon& inner, const Rat& r) {
  require_positive_dilation(r);
  std::vector<Point> corners;
  corners.reserve(inner.size());
  for (const Point& p : inner.vertices()) corners.push_back({p.x * r, p.y * r});

  // t + conv(corners) lies in outer iff n.t <= c - max_corner n.corner for
  // every outer halfplane.
  struct Constraint {
    Rat nx, ny, c;
  };
  std::vector<Constraint> cons;
  for (const auto& h : outer.halfplanes()) {
    Rat worst = h.nx * corners[0].x + h.ny * corners[0].y;
    for (const Point& p : corners) worst = max(worst, h.nx * p.x + h.ny * p.y);
    cons.push_back({h.nx, h.ny, h.c - worst});
  }

  auto feasible = [&](const Rat& tx, const Rat& ty) {
    for (const auto& k : cons)
      if (k.nx * tx + k.ny * ty > k.c) return false;
    return true;
  };

  // The feasible set is a bounded polyhedron (outer is bounded, so its edge
  // normals positively span the plane); if nonempty it has a vertex given
  // by two constraints with independent normals.
  for (std::size_t i = 0; i < cons.size(); ++i) {
    for (std::size_t j = i + 1; j < cons.size(); ++j) {
      Rat det = cons[i].nx * cons[j].ny - cons[j].nx * cons[i].ny;
      if (det.sign() == 0) continue;
      Rat tx = (cons[i].c * cons[j].ny - cons[j].c * cons[i].ny) / det;
      Rat ty = (cons[i].nx * cons[j].c - cons[j].nx * cons[i].c) / det;
      if (feasible(tx, ty)) return Point{tx, ty};
    }
  }
  return std::nullopt;
}

}  // namespace kakeya
