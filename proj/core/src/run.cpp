#include "kakeya/run.hpp"

#include <iostream>
#include <thread>

#include "kakeya/errors.hpp"
#include "kakeya/json_io.hpp"
#include "kakeya/svg_render.hpp"
#include "kakeya/sweep.hpp"

namespace kakeya {

namespace {

unsigned resolve_workers(const RunConfig& cfg) {
  if (cfg.workerCount > 0) return cfg.workerCount;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void emit(const RunConfig& cfg, const std::string& report, const std::string& svg) {
  if (cfg.outputPath.empty()) {
    std::cout << report;
  } else {
    write_file(cfg.outputPath, report);
    std::cout << "report written to " << cfg.outputPath << "\n";
  }
  if (!cfg.svgPath.empty()) {
    write_file(cfg.svgPath, svg);
    std::cout << "svg written to " << cfg.svgPath << "\n";
  }
}

std::vector<std::pair<int, DyadicTree>> forest_trees(const DirectionForest& forest) {
  std::vector<std::pair<int, DyadicTree>> out;
  for (const auto& [cls, dt] : forest.byClass) out.emplace_back(cls, dt.tree);
  return out;
}

void run_analyze(const RunConfig& cfg) {
  GeneratorsInput input = parse_generators_text(read_file(cfg.inputPath));
  unsigned depth = cfg.depth ? cfg.depth : input.depth;
  std::vector<GeneratorRecord> records = process_generators(input.generators, cfg.maxK);
  DirectionForest forest = build_direction_tree(records, depth);
  std::string svg = cfg.svgPath.empty() ? std::string() : svg_trees(forest_trees(forest));
  emit(cfg, analyze_report_json(cfg, input, forest), svg);
}

void run_kakeya(const RunConfig& cfg) {
  GeneratorsInput input = parse_generators_text(read_file(cfg.inputPath));
  unsigned maxDepth = cfg.depth ? cfg.depth : input.depth;
  std::vector<GeneratorRecord> records = process_generators(input.generators, cfg.maxK);

  // minimal truncation depth whose split reaches N, first class wins
  const unsigned n = cfg.N;
  std::optional<unsigned> kFound;
  const DirectionTree* hit = nullptr;
  DirectionForest forest;
  for (unsigned k = 1; k <= maxDepth && !kFound; ++k) {
    forest = build_direction_tree(records, k);
    for (const auto& [cls, dt] : forest.byClass) {
      if (split_number(dt.tree).tree >= n) {
        kFound = k;
        hit = &forest.byClass.at(cls);
        break;
      }
    }
  }
  if (!kFound)
    raise(Errc::InsufficientSplit,
          "no truncation depth <= " + std::to_string(maxDepth) + " reaches split " + std::to_string(n));

  DyadicTree pruned = prune_bateman(hit->tree, n);
  ExtendedTree ext = extend_pruned(pruned, *kFound);
  KakeyaReport report =
      search_sigma(ext, cfg.trials, cfg.seed, SigmaObjective::MaxRatio, resolve_workers(cfg));

  // witness sample: slice midpoints on the dyadic grid, capped for report size
  std::vector<Point> points = sample_k1_points(report, report.k + 2);
  if (points.size() > 128) points.resize(128);
  for (const Point& x : points) report.witnesses.push_back(quarter_witness(report, ext, x));

  LevelSetBound levelSet = weak_level_set(report, cfg.pGrid.empty() ? default_p_grid() : cfg.pGrid);
  std::string svg = cfg.svgPath.empty() ? std::string() : svg_kakeya(report);
  emit(cfg, kakeya_report_json(cfg, input, report, ext, levelSet), svg);
}

void run_measure(const RunConfig& cfg) {
  MeasureInput input = parse_measure_text(read_file(cfg.inputPath));
  Rat value = union_measure(input.u, input.xLo, input.xHi);
  std::string svg = cfg.svgPath.empty() ? std::string() : svg_kakeya_scene(input.u.members);
  emit(cfg, measure_report_json(cfg, input, value), svg);
}

void run_maximal(const RunConfig& cfg) {
  MaximalInput input = parse_maximal_text(read_file(cfg.inputPath));
  MaximalBound bound = maximal_lower_bound(input.x, input.u, input.candidates);
  std::string svg = cfg.svgPath.empty() ? std::string() : svg_kakeya_scene(input.u.members);
  emit(cfg, maximal_report_json(cfg, input, bound), svg);
}

void run_classify(const RunConfig& cfg) {
  GeneratorsInput input = parse_generators_text(read_file(cfg.inputPath));
  ClassifyOptions options;
  options.trials = cfg.trials;
  options.seed = cfg.seed;
  options.maxReportN = cfg.N;
  options.maxK = cfg.maxK;
  options.workers = resolve_workers(cfg);
  DichotomyVerdict verdict = classify(input.generators, cfg.depths, options);
  std::string svg;
  if (!cfg.svgPath.empty()) {
    if (!verdict.kakeya.empty())
      svg = svg_kakeya(verdict.kakeya.front());
    else
      svg = svg_trees(forest_trees(
          build_direction_tree(process_generators(input.generators, cfg.maxK), cfg.depths.back())));
  }
  emit(cfg, classify_report_json(cfg, input, verdict, cfg.pGrid.empty() ? default_p_grid() : cfg.pGrid),
       svg);
}

void run_render(const RunConfig& cfg) {
  RenderScene scene = parse_render_scene(read_file(cfg.inputPath));
  std::string svg = scene.members.empty() ? svg_trees(scene.trees) : svg_kakeya_scene(scene.members);
  if (cfg.svgPath.empty() && cfg.outputPath.empty())
    raise(Errc::InvalidInput, "render needs an output path");
  std::string path = cfg.svgPath.empty() ? cfg.outputPath : cfg.svgPath;
  write_file(path, svg);
  std::cout << "svg written to " << path << "\n";
}

bool is_input_error(Errc c) {
  switch (c) {
    case Errc::InvalidInput:
    case Errc::InvalidVertex:
    case Errc::InvalidHeight:
    case Errc::InvalidCode:
    case Errc::InvalidDilation:
    case Errc::InvalidCandidate:
    case Errc::InsufficientSplit:
    case Errc::OracleTooLarge:
    case Errc::ResolutionExceeded:
    case Errc::NotInK1:
    case Errc::EmptySet:
    case Errc::IoFailure:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const RunConfig& config) {
  try {
    switch (config.command) {
      case Command::Analyze: run_analyze(config); break;
      case Command::Kakeya: run_kakeya(config); break;
      case Command::Measure: run_measure(config); break;
      case Command::Maximal: run_maximal(config); break;
      case Command::Classify: run_classify(config); break;
      case Command::Render: run_render(config); break;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kakeya
