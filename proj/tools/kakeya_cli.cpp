// Command line front end: subcommands map one-to-one onto kakeya::run
// configurations. Seeds default to 0 so every run is reproducible.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kakeya/run.hpp"

namespace {

unsigned workers_from_env() {
  const char* env = std::getenv("KAKEYA_WORKERS");
  if (!env) return 0;
  long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<unsigned>(v) : 0;
}

void add_io_options(CLI::App* cmd, kakeya::RunConfig& cfg, bool needsInput = true) {
  auto* in = cmd->add_option("-i,--in", cfg.inputPath, "input JSON file");
  if (needsInput) in->required();
  cmd->add_option("-o,--out", cfg.outputPath, "report output path (default: stdout)");
  cmd->add_option("--svg", cfg.svgPath, "also write an SVG rendering");
  cmd->add_option("--workers", cfg.workerCount,
                  "worker threads (default: KAKEYA_WORKERS or hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact analysis of homothecy-invariant convex direction bases"};
  app.require_subcommand(1);

  kakeya::RunConfig cfg;
  cfg.workerCount = workers_from_env();

  auto* analyze = app.add_subcommand(
      "analyze", "reduction chain: generators to rectangles, covers, codes and direction trees");
  add_io_options(analyze, cfg);
  analyze->add_option("--depth", cfg.depth, "tree truncation depth (default: input file depth)");
  analyze->add_option("--max-k", cfg.maxK, "slope resolution bound for the cover search");

  auto* kakeya = app.add_subcommand(
      "kakeya", "build the best Kakeya-type set for split value N with exact slab measures");
  add_io_options(kakeya, cfg);
  kakeya->add_option("--N", cfg.N, "target split value")->required();
  kakeya->add_option("--trials", cfg.trials, "sticky map samples (default 256)");
  kakeya->add_option("--seed", cfg.seed, "base seed (default 0)");
  kakeya->add_option("--depth", cfg.depth, "maximum truncation depth searched");
  kakeya->add_option("--max-k", cfg.maxK, "slope resolution bound for the cover search");

  auto* measure = app.add_subcommand("measure", "exact area of a union of parallelograms in a slab");
  add_io_options(measure, cfg);

  auto* maximal = app.add_subcommand(
      "maximal", "certified lower bound of the maximal operator at a point over candidates");
  add_io_options(maximal, cfg);

  auto* classify = app.add_subcommand(
      "classify", "dichotomy analysis: bounded certificate or unbounded evidence on tested depths");
  add_io_options(classify, cfg);
  std::string depthsText = "1,2,3,4,5,6,7,8";
  classify->add_option("--depths", depthsText, "comma-separated truncation depths (default 1..8)");
  classify->add_option("--trials", cfg.trials, "sticky map samples per evidence report");
  classify->add_option("--seed", cfg.seed, "base seed (default 0)");
  classify->add_option("--max-report-n", cfg.N, "largest split value given an evidence report");
  classify->add_option("--max-k", cfg.maxK, "slope resolution bound for the cover search");

  auto* render = app.add_subcommand("render", "SVG rendering of a report or a tree file");
  add_io_options(render, cfg);

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) cfg.command = kakeya::Command::Analyze;
  if (kakeya->parsed()) cfg.command = kakeya::Command::Kakeya;
  if (measure->parsed()) cfg.command = kakeya::Command::Measure;
  if (maximal->parsed()) cfg.command = kakeya::Command::Maximal;
  if (classify->parsed()) {
    cfg.command = kakeya::Command::Classify;
    cfg.depths.clear();
    std::size_t pos = 0;
    while (pos < depthsText.size()) {
      std::size_t comma = depthsText.find(',', pos);
      if (comma == std::string::npos) comma = depthsText.size();
      try {
        cfg.depths.push_back(static_cast<unsigned>(std::stoul(depthsText.substr(pos, comma - pos))));
      } catch (const std::exception&) {
        std::cerr << "error: malformed --depths list\n";
        return 2;
      }
      pos = comma + 1;
    }
  }
  if (render->parsed()) cfg.command = kakeya::Command::Render;

  return kakeya::run(cfg);
}
