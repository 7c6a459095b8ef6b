#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "kakeya/dyadic_tree.hpp"
#include "kakeya/geometry.hpp"

namespace kakeya {

// The eight signed axis permutations of the plane. Homothecy invariance
// does not absorb rotations or reflections, so generators are normalized
// into the frame where a longest rectangle side has slope in [0,1] and the
// applied transform index is carried along as the symmetry class.
struct DihedralTransform {
  int index;  // 0..7
  int a, b, c, d;  // p -> (a*p.x + b*p.y, c*p.x + d*p.y)

  Point apply(const Point& p) const;
  ConvexPolygon apply(const ConvexPolygon& s) const;
};

const std::array<DihedralTransform, 8>& dihedral_transforms();

// Provenance record of one generator after the reduction chain, with every
// field expressed in the normalized frame of its symmetry class.
struct GeneratorRecord {
  ConvexPolygon source;          // normalized generator
  ConvexPolygon rectangle;       // normalized Lassak rectangle
  VParallelogram parallelogram;  // vertical-sided dyadic-slope cover
  int symmetryClass = 0;
  Vertex canonicalCode;
  unsigned k = 0;
  std::uint64_t j = 0;
};

// Rectangle R containing s with |R| <= 4|s| and a translate of the half
// dilate of R inside s. Candidates are the minimal bounding rectangles
// aligned with each edge and each vertex-pair direction (the minimum-area
// enclosing rectangle is edge-aligned, so it is among them); candidates
// are tried in (area, direction) order and every predicate is checked
// exactly before a candidate is accepted.
ConvexPolygon lassak_rectangle(const ConvexPolygon& s);

struct EnclosingResult {
  VParallelogram parallelogram;
  ConvexPolygon normalizedRectangle;
  int symmetryClass = 0;
  unsigned k = 0;
  std::uint64_t j = 0;
};

// Vertical-sided parallelogram P covering the rectangle after dihedral
// normalization: slope j*2^-k in [0,1), side length 2^-k times the width,
// |P| <= 32|R|, and a translate of the 1/32 dilate of P inside R. Among
// feasible (k, j) the pair with minimal area (largest k), then smallest j,
// wins. ResolutionExceeded when no k <= maxK verifies.
EnclosingResult enclosing_parallelogram(const ConvexPolygon& rectangle, unsigned maxK);

// Canonical parallelogram of a code: x in [0,1], yBottomLeft 0, slope equal
// to the vertex direction value, side 2^-height.
VParallelogram decode_code(const Vertex& v);
std::uint64_t code_index(const Vertex& v);  // the j with slope j*2^-height

// Full chain for one polygonal generator; record invariants are re-verified
// exactly before returning.
GeneratorRecord process_generator(const ConvexPolygon& s, unsigned maxK);

// Direct-code generators skip the geometric stages: the canonical
// parallelogram stands in for source and rectangle, symmetry class 0.
GeneratorRecord record_from_code(const Vertex& code);

// Input forms: a polygon, a direct code, or slope indices j*2^-k.
struct PolygonSpec {
  ConvexPolygon polygon;
};
struct CodeSpec {
  Vertex code;
};
struct SlopesSpec {
  unsigned k = 0;
  std::vector<std::uint64_t> j;
};
using GeneratorSpec = std::variant<PolygonSpec, CodeSpec, SlopesSpec>;

std::vector<GeneratorRecord> process_generators(const std::vector<GeneratorSpec>& specs,
                                                unsigned maxK);

// Direction tree of one symmetry class: ancestor closure of the root and
// the class codes of height <= depth, plus the records for provenance.
struct DirectionTree {
  DyadicTree tree;
  std::vector<GeneratorRecord> generators;
  unsigned depth = 0;
};

// Trees for all symmetry classes that received generators; analyses run per
// class and report the maximum over classes.
struct DirectionForest {
  std::map<int, DirectionTree> byClass;
  unsigned depth = 0;
};

DirectionForest build_direction_tree(const std::vector<GeneratorRecord>& records, unsigned depth);
DirectionForest build_direction_tree(const std::vector<ConvexPolygon>& generators, unsigned depth,
                                     unsigned maxK);

}  // namespace kakeya
