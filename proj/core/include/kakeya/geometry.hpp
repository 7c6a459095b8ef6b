#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kakeya/rational.hpp"

namespace kakeya {

struct Point {
  Rat x;
  Rat y;

  friend bool operator==(const Point& a, const Point& b) = default;
};

struct Interval {
  Rat lo;
  Rat hi;

  Rat length() const { return hi - lo; }
  friend bool operator==(const Interval& a, const Interval& b) = default;
};

// cross product of (b - a) and (c - a)
Rat cross(const Point& a, const Point& b, const Point& c);

// Strictly convex polygon, counterclockwise, collinear vertices elided,
// canonical start vertex (lexicographically smallest). Degenerate input
// (area zero, fewer than three distinct vertices, reflex corner) is
// rejected with InvalidInput.
class ConvexPolygon {
public:
  explicit ConvexPolygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }

  Rat area() const;
  bool contains(const Point& p) const;  // closed containment
  bool contains(const ConvexPolygon& inner) const;

  Interval proj_x() const;
  Interval proj_y() const;

  // Inward halfplanes n.x <= c, one per edge, in vertex order.
  struct Halfplane {
    Rat nx, ny, c;
  };
  std::vector<Halfplane> halfplanes() const;

  friend bool operator==(const ConvexPolygon& a, const ConvexPolygon& b) = default;

private:
  std::vector<Point> verts_;
};

// Parallelogram with vertical left and right sides. Vertices are
// (x0,yBL), (x0,yBL+side), (x1,yBL+slope*(x1-x0)), (x1,yBL+slope*(x1-x0)+side).
struct VParallelogram {
  Rat x0, x1;
  Rat yBottomLeft;
  Rat slope;
  Rat sideLength;

  VParallelogram(Rat x0_, Rat x1_, Rat yBL, Rat slope_, Rat side);

  Rat width() const { return x1 - x0; }
  Rat area() const { return sideLength * width(); }
  Rat bottom_at(const Rat& x) const { return yBottomLeft + slope * (x - x0); }
  Rat top_at(const Rat& x) const { return bottom_at(x) + sideLength; }

  std::array<Point, 4> corners() const;
  ConvexPolygon to_polygon() const;
  bool contains(const Point& p) const;            // closed
  bool contains(const VParallelogram& q) const;   // closed, corner test

  Interval proj_x() const { return {x0, x1}; }
  Interval proj_y() const;

  friend bool operator==(const VParallelogram& a, const VParallelogram& b) = default;
};

struct ParallelogramUnion {
  std::vector<VParallelogram> members;
};

// Homothecies. Dilation is about the origin: chi_{rS}(y) = chi_S(y/r);
// r <= 0 raises InvalidDilation.
Point translate(const Point& p, const Point& t);
ConvexPolygon translate(const ConvexPolygon& s, const Point& t);
VParallelogram translate(const VParallelogram& s, const Point& t);
ParallelogramUnion translate(const ParallelogramUnion& s, const Point& t);
Point dilate(const Point& p, const Rat& r);
ConvexPolygon dilate(const ConvexPolygon& s, const Rat& r);
VParallelogram dilate(const VParallelogram& s, const Rat& r);
ParallelogramUnion dilate(const ParallelogramUnion& s, const Rat& r);

std::pair<Interval, Interval> projections(const ConvexPolygon& s);
std::pair<Interval, Interval> projections(const VParallelogram& s);

// Decides, exactly, whether some translate of dilate(inner, r) fits inside
// outer; returns one witness translation on success. Feasibility of the
// linear constraint system over the translation vector: a corner-tightened
// halfplane intersection is nonempty iff one of its candidate vertices
// satisfies every constraint.
std::optional<Point> contains_translate_of_dilate(const ConvexPolygon& outer,
                                                  const ConvexPolygon& inner, const Rat& r);

}  // namespace kakeya
