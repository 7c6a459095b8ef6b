#pragma once

#include <string>
#include <vector>

#include "kakeya/basis_pipeline.hpp"
#include "kakeya/config.hpp"
#include "kakeya/kakeya_set.hpp"
#include "kakeya/maximal_analysis.hpp"

namespace kakeya {

// Parsers reject malformed JSON, unknown fields, and malformed rationals
// with InvalidInput errors that name the offending field path. Inputs are
// re-serialized into a canonical echo that reports embed for replay.

struct GeneratorsInput {
  unsigned depth = 8;
  std::vector<GeneratorSpec> generators;
  std::string canonicalJson;
};

GeneratorsInput parse_generators_text(const std::string& text);

struct MeasureInput {
  ParallelogramUnion u;
  Rat xLo, xHi;
  std::string canonicalJson;
};

MeasureInput parse_measure_text(const std::string& text);

struct MaximalInput {
  Point x{Rat(0), Rat(0)};
  ParallelogramUnion u;
  std::vector<VParallelogram> candidates;
  std::string canonicalJson;
};

MaximalInput parse_maximal_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Report builders. Keys are emitted in sorted order and all numbers are
// rational strings (decimal renderings are labeled as such), so identical
// runs produce identical bytes.
std::string analyze_report_json(const RunConfig& cfg, const GeneratorsInput& input,
                                const DirectionForest& forest);
std::string kakeya_report_json(const RunConfig& cfg, const GeneratorsInput& input,
                               const KakeyaReport& report, const ExtendedTree& ext,
                               const LevelSetBound& levelSet);
std::string classify_report_json(const RunConfig& cfg, const GeneratorsInput& input,
                                 const DichotomyVerdict& verdict,
                                 const std::vector<Rat>& pGrid);
std::string measure_report_json(const RunConfig& cfg, const MeasureInput& input, const Rat& value);
std::string maximal_report_json(const RunConfig& cfg, const MaximalInput& input,
                                const MaximalBound& bound);

// Scene extraction for the render command: a report produced by this tool
// (kakeya: members; analyze/classify: trees) or a bare {"tree": [...]}.
struct RenderScene {
  std::vector<VParallelogram> members;           // kakeya scene when nonempty
  std::vector<std::pair<int, DyadicTree>> trees; // class trees otherwise
};

RenderScene parse_render_scene(const std::string& text);

}  // namespace kakeya
