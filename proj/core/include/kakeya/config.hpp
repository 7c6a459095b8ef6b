#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kakeya/rational.hpp"

namespace kakeya {

enum class Command { Analyze, Kakeya, Measure, Maximal, Classify, Render };

const char* command_name(Command c);

// Full run configuration; embedded verbatim in every report so a run can be
// replayed from its output.
struct RunConfig {
  Command command = Command::Analyze;
  std::string inputPath;
  std::string outputPath;  // empty: write the report to stdout
  std::string svgPath;     // empty: no SVG artifact
  std::vector<unsigned> depths = {1, 2, 3, 4, 5, 6, 7, 8};  // classify
  unsigned depth = 0;      // 0: use the input file's depth
  unsigned N = 6;          // kakeya: target split; classify: report cap
  unsigned trials = 256;
  std::uint64_t seed = 0;
  std::vector<Rat> pGrid;  // empty: default grid
  unsigned maxK = 16;      // slope resolution bound for the cover search
  unsigned workerCount = 0;  // 0: hardware concurrency
};

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Analyze: return "analyze";
    case Command::Kakeya: return "kakeya";
    case Command::Measure: return "measure";
    case Command::Maximal: return "maximal";
    case Command::Classify: return "classify";
    case Command::Render: return "render";
  }
  return "unknown";
}

}  // namespace kakeya
