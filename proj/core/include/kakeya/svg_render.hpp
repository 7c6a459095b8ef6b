#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kakeya/dyadic_tree.hpp"
#include "kakeya/geometry.hpp"
#include "kakeya/kakeya_set.hpp"

namespace kakeya {

// Deterministic SVG emission: fixed 512-units-per-unit-length scale, fixed
// colors, truncated decimal coordinates computed with integer arithmetic,
// so identical scenes produce identical bytes.

// Kakeya scene: the member parallelograms with the two slabs [0,1]x R and
// [1,2]x R shaded behind them.
std::string svg_kakeya_scene(const std::vector<VParallelogram>& members);
std::string svg_kakeya(const KakeyaReport& report);

// Layered node-link diagram, root at the top, node abscissa given by the
// midpoint of the vertex's dyadic interval.
std::string svg_tree(const DyadicTree& tree);
std::string svg_trees(const std::vector<std::pair<int, DyadicTree>>& classTrees);

}  // namespace kakeya
