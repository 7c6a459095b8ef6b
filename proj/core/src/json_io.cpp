#include "kakeya/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kakeya/errors.hpp"

namespace kakeya {

using nlohmann::json;

namespace {

[[noreturn]] void bad_input(const std::string& path, const std::string& msg) {
  raise(Errc::InvalidInput, path + ": " + msg);
}

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      bad_input(path, "unknown field '" + it.key() + "'");
  }
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) bad_input(path, std::string("missing field '") + key + "'");
  return *it;
}

Rat parse_rat(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rat(static_cast<long long>(v.get<std::int64_t>()));
  if (!v.is_string()) bad_input(path, "expected a rational string");
  auto r = Rat::try_parse(v.get<std::string>());
  if (!r) bad_input(path, "malformed rational '" + v.get<std::string>() + "'");
  return *r;
}

unsigned parse_uint(const json& v, const std::string& path, unsigned cap) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    bad_input(path, "expected a nonnegative integer");
  std::uint64_t n = v.get<std::uint64_t>();
  if (n > cap) bad_input(path, "value above limit " + std::to_string(cap));
  return static_cast<unsigned>(n);
}

Point parse_point(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) bad_input(path, "expected [x, y]");
  return Point{parse_rat(v[0], path + "[0]"), parse_rat(v[1], path + "[1]")};
}

ConvexPolygon parse_polygon_vertices(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() < 3) bad_input(path, "expected at least three vertices");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < v.size(); ++i)
    pts.push_back(parse_point(v[i], path + "[" + std::to_string(i) + "]"));
  try {
    return ConvexPolygon(std::move(pts));
  } catch (const Error& e) {
    bad_input(path, e.what());
  }
}

VParallelogram parse_vparallelogram(const json& v, const std::string& path) {
  if (!v.is_object()) bad_input(path, "expected a parallelogram object");
  check_keys(v, {"type", "x0", "x1", "yBottomLeft", "slope", "sideLength"}, path);
  if (v.contains("type") && v["type"] != "vparallelogram")
    bad_input(path + ".type", "expected 'vparallelogram'");
  try {
    return VParallelogram{parse_rat(field(v, "x0", path), path + ".x0"),
                          parse_rat(field(v, "x1", path), path + ".x1"),
                          parse_rat(field(v, "yBottomLeft", path), path + ".yBottomLeft"),
                          parse_rat(field(v, "slope", path), path + ".slope"),
                          parse_rat(field(v, "sideLength", path), path + ".sideLength")};
  } catch (const Error& e) {
    bad_input(path, e.what());
  }
}

ParallelogramUnion parse_union(const json& v, const std::string& path) {
  if (!v.is_object()) bad_input(path, "expected a union object");
  check_keys(v, {"members"}, path);
  const json& members = field(v, "members", path);
  if (!members.is_array() || members.empty()) bad_input(path + ".members", "expected a nonempty array");
  ParallelogramUnion u;
  for (std::size_t i = 0; i < members.size(); ++i)
    u.members.push_back(parse_vparallelogram(members[i], path + ".members[" + std::to_string(i) + "]"));
  return u;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    raise(Errc::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

// ---- canonical emission --------------------------------------------------

json rat_node(const Rat& r) { return r.str(); }

json point_node(const Point& p) { return json::array({rat_node(p.x), rat_node(p.y)}); }

json polygon_node(const ConvexPolygon& s) {
  json verts = json::array();
  for (const Point& p : s.vertices()) verts.push_back(point_node(p));
  return verts;
}

json vparallelogram_node(const VParallelogram& p) {
  return json{{"type", "vparallelogram"},
              {"x0", rat_node(p.x0)},
              {"x1", rat_node(p.x1)},
              {"yBottomLeft", rat_node(p.yBottomLeft)},
              {"slope", rat_node(p.slope)},
              {"sideLength", rat_node(p.sideLength)}};
}

json union_node(const ParallelogramUnion& u) {
  json members = json::array();
  for (const auto& m : u.members) members.push_back(vparallelogram_node(m));
  return json{{"members", members}};
}

json generators_node(const std::vector<GeneratorSpec>& specs, unsigned depth) {
  json gens = json::array();
  for (const auto& spec : specs) {
    if (const auto* poly = std::get_if<PolygonSpec>(&spec)) {
      gens.push_back(json{{"type", "polygon"}, {"vertices", polygon_node(poly->polygon)}});
    } else if (const auto* code = std::get_if<CodeSpec>(&spec)) {
      gens.push_back(json{{"type", "code"}, {"bits", code->code.bits()}});
    } else {
      const auto& slopes = std::get<SlopesSpec>(spec);
      gens.push_back(json{{"type", "slopes"}, {"k", slopes.k}, {"j", slopes.j}});
    }
  }
  return json{{"depth", depth}, {"generators", gens}};
}

json tree_node(const DyadicTree& t) {
  json out = json::array();
  for (const auto& bits : t.bit_list()) out.push_back(bits);
  return out;
}

json config_node(const RunConfig& cfg) {
  json pGrid = json::array();
  for (const Rat& p : (cfg.pGrid.empty() ? default_p_grid() : cfg.pGrid))
    pGrid.push_back(rat_node(p));
  return json{{"command", command_name(cfg.command)},
              {"inputPath", cfg.inputPath},
              {"outputPath", cfg.outputPath},
              {"svgPath", cfg.svgPath},
              {"depths", cfg.depths},
              {"depth", cfg.depth},
              {"N", cfg.N},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"pGrid", pGrid},
              {"maxK", cfg.maxK},
              {"workerCount", cfg.workerCount}};
}

json level_set_node(const LevelSetBound& ls) {
  json entries = json::array();
  for (const auto& e : ls.entries)
    entries.push_back(json{{"p", rat_node(e.p)},
                           {"lpLowerBoundDecimal", e.lpLowerBoundDecimal},
                           {"ratioDecimal", e.ratioDecimal}});
  json pGrid = json::array();
  for (const Rat& p : ls.pGrid) pGrid.push_back(rat_node(p));
  return json{{"threshold", rat_node(ls.threshold)},
              {"measureLowerBound", rat_node(ls.measureLowerBound)},
              {"m2", rat_node(ls.m2)},
              {"pGrid", pGrid},
              {"entries", entries}};
}

json witness_node(const Witness& w) {
  return json{{"point", point_node(w.x)},
              {"ancestor", w.prunedAncestor.bits()},
              {"Px", vparallelogram_node(w.Px)},
              {"Ex", vparallelogram_node(w.Ex)},
              {"Q", vparallelogram_node(w.Q)},
              {"average", rat_node(w.average)}};
}

json kakeya_node(const KakeyaReport& report, const ExtendedTree& ext,
                 const LevelSetBound& levelSet) {
  json sigma = json::array();
  for (const auto& [v, w] : report.sigma.image())
    sigma.push_back(json::array({v.bits(), w.bits()}));
  json members = json::array();
  for (const auto& m : report.K.members) members.push_back(vparallelogram_node(m));
  json witnesses = json::array();
  for (const auto& w : report.witnesses) witnesses.push_back(witness_node(w));
  return json{{"N", report.N},
              {"k", report.k},
              {"bestSeed", report.bestSeed},
              {"trials", report.trials},
              {"prunedTree", tree_node(ext.pruned)},
              {"extendedTree", tree_node(ext.extended)},
              {"sigma", sigma},
              {"m1", rat_node(report.m1)},
              {"m2", rat_node(report.m2)},
              {"ratio", rat_node(report.ratio())},
              {"members", members},
              {"witnesses", witnesses},
              {"levelSet", level_set_node(levelSet)}};
}

json envelope(const RunConfig& cfg, const std::string& canonicalInput) {
  json out{{"schemaVersion", 1}, {"command", command_name(cfg.command)}, {"config", config_node(cfg)}};
  if (!canonicalInput.empty()) out["input"] = json::parse(canonicalInput);
  return out;
}

std::string dump_report(const json& node) { return node.dump(2) + "\n"; }

}  // namespace

GeneratorsInput parse_generators_text(const std::string& text) {
  json doc = parse_text(text);
  if (!doc.is_object()) bad_input("$", "expected a top-level object");
  check_keys(doc, {"depth", "generators"}, "$");
  GeneratorsInput out;
  if (doc.contains("depth")) out.depth = parse_uint(doc["depth"], "$.depth", 24);
  const json& gens = field(doc, "generators", "$");
  if (!gens.is_array() || gens.empty()) bad_input("$.generators", "expected a nonempty array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string path = "$.generators[" + std::to_string(i) + "]";
    const json& g = gens[i];
    if (!g.is_object()) bad_input(path, "expected an object");
    const json& type = field(g, "type", path);
    if (type == "polygon") {
      check_keys(g, {"type", "vertices"}, path);
      out.generators.push_back(
          PolygonSpec{parse_polygon_vertices(field(g, "vertices", path), path + ".vertices")});
    } else if (type == "code") {
      check_keys(g, {"type", "bits"}, path);
      const json& bits = field(g, "bits", path);
      if (!bits.is_string()) bad_input(path + ".bits", "expected a bit string");
      try {
        out.generators.push_back(CodeSpec{Vertex(bits.get<std::string>())});
      } catch (const Error& e) {
        bad_input(path + ".bits", e.what());
      }
    } else if (type == "slopes") {
      check_keys(g, {"type", "k", "j"}, path);
      SlopesSpec spec;
      spec.k = parse_uint(field(g, "k", path), path + ".k", 24);
      const json& js = field(g, "j", path);
      if (!js.is_array() || js.empty()) bad_input(path + ".j", "expected a nonempty array");
      for (std::size_t t = 0; t < js.size(); ++t) {
        std::string jp = path + ".j[" + std::to_string(t) + "]";
        if (!js[t].is_number_unsigned() && !(js[t].is_number_integer() && js[t].get<std::int64_t>() >= 0))
          bad_input(jp, "expected a nonnegative integer");
        std::uint64_t j = js[t].get<std::uint64_t>();
        if (spec.k >= 63 || j >= (std::uint64_t{1} << spec.k)) bad_input(jp, "slope index out of range");
        spec.j.push_back(j);
      }
      out.generators.push_back(std::move(spec));
    } else {
      bad_input(path + ".type", "expected 'polygon', 'code' or 'slopes'");
    }
  }
  out.canonicalJson = generators_node(out.generators, out.depth).dump();
  return out;
}

MeasureInput parse_measure_text(const std::string& text) {
  json doc = parse_text(text);
  if (!doc.is_object()) bad_input("$", "expected a top-level object");
  check_keys(doc, {"union", "xLo", "xHi"}, "$");
  MeasureInput out;
  out.u = parse_union(field(doc, "union", "$"), "$.union");
  out.xLo = parse_rat(field(doc, "xLo", "$"), "$.xLo");
  out.xHi = parse_rat(field(doc, "xHi", "$"), "$.xHi");
  if (!(out.xLo < out.xHi)) bad_input("$.xLo", "needs xLo < xHi");
  json canonical{{"union", union_node(out.u)}, {"xLo", rat_node(out.xLo)}, {"xHi", rat_node(out.xHi)}};
  out.canonicalJson = canonical.dump();
  return out;
}

MaximalInput parse_maximal_text(const std::string& text) {
  json doc = parse_text(text);
  if (!doc.is_object()) bad_input("$", "expected a top-level object");
  check_keys(doc, {"point", "union", "candidates"}, "$");
  MaximalInput out;
  out.x = parse_point(field(doc, "point", "$"), "$.point");
  out.u = parse_union(field(doc, "union", "$"), "$.union");
  const json& cands = field(doc, "candidates", "$");
  if (!cands.is_array() || cands.empty()) bad_input("$.candidates", "expected a nonempty array");
  for (std::size_t i = 0; i < cands.size(); ++i)
    out.candidates.push_back(
        parse_vparallelogram(cands[i], "$.candidates[" + std::to_string(i) + "]"));
  json cc = json::array();
  for (const auto& c : out.candidates) cc.push_back(vparallelogram_node(c));
  json canonical{{"point", point_node(out.x)}, {"union", union_node(out.u)}, {"candidates", cc}};
  out.canonicalJson = canonical.dump();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoFailure, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::IoFailure, "cannot write " + path);
  out << content;
  if (!out) raise(Errc::IoFailure, "write failed for " + path);
}

std::string analyze_report_json(const RunConfig& cfg, const GeneratorsInput& input,
                                const DirectionForest& forest) {
  json out = envelope(cfg, input.canonicalJson);
  out["sandwichConstants"] = json{{"lower", "1/4096"}, {"upper", "128"}};
  json classes = json::array();
  for (const auto& [cls, dt] : forest.byClass) {
    json gens = json::array();
    for (std::size_t i = 0; i < dt.generators.size(); ++i) {
      const GeneratorRecord& rec = dt.generators[i];
      gens.push_back(json{{"index", i},
                          {"code", rec.canonicalCode.bits()},
                          {"k", rec.k},
                          {"j", rec.j},
                          {"source", polygon_node(rec.source)},
                          {"rectangle", polygon_node(rec.rectangle)},
                          {"parallelogram", vparallelogram_node(rec.parallelogram)}});
    }
    DirectionSet dirs = directions_of(dt.tree);
    json dirNode = json::array();
    for (const Rat& s : dirs.slopes) dirNode.push_back(rat_node(s));
    classes.push_back(json{{"symmetryClass", cls},
                           {"depth", dt.depth},
                           {"tree", tree_node(dt.tree)},
                           {"split", split_number(dt.tree).tree},
                           {"lacunarityOrderExtended", lacunarity_order(extend(dt.tree, dt.depth))},
                           {"directions", dirNode},
                           {"generators", gens}});
  }
  out["classes"] = classes;
  return dump_report(out);
}

std::string kakeya_report_json(const RunConfig& cfg, const GeneratorsInput& input,
                               const KakeyaReport& report, const ExtendedTree& ext,
                               const LevelSetBound& levelSet) {
  json out = envelope(cfg, input.canonicalJson);
  out["report"] = kakeya_node(report, ext, levelSet);
  return dump_report(out);
}

std::string classify_report_json(const RunConfig& cfg, const GeneratorsInput& input,
                                 const DichotomyVerdict& verdict,
                                 const std::vector<Rat>& pGrid) {
  json out = envelope(cfg, input.canonicalJson);
  out["kind"] = verdict.kind == VerdictKind::BoundedCertificate ? "BoundedCertificate"
                                                                : "UnboundedEvidence";
  json table = json::array();
  for (const auto& row : verdict.splitByDepth) table.push_back(json::array({row.depth, row.split}));
  out["splitByDepth"] = table;
  json perClass = json::array();
  for (const auto& cls : verdict.perClass) {
    json rows = json::array();
    for (const auto& row : cls.splits) rows.push_back(json::array({row.depth, row.split}));
    perClass.push_back(json{{"symmetryClass", cls.symmetryClass}, {"splits", rows}});
  }
  out["perClass"] = perClass;
  out["truncationOnly"] = verdict.truncationOnly;
  out["caveatSingleIncrease"] = verdict.caveatSingleIncrease;
  if (verdict.kind == VerdictKind::BoundedCertificate) {
    out["order"] = verdict.order;
    out["lacunarityOrderExtended"] = verdict.lacunarityOrderExtended;
  } else {
    json reports = json::array();
    for (std::size_t i = 0; i < verdict.kakeya.size(); ++i) {
      const KakeyaReport& rep = verdict.kakeya[i];
      json node = json{{"N", rep.N},
                       {"k", rep.k},
                       {"bestSeed", rep.bestSeed},
                       {"trials", rep.trials},
                       {"m1", rat_node(rep.m1)},
                       {"m2", rat_node(rep.m2)},
                       {"ratio", rat_node(rep.ratio())},
                       {"levelSet", level_set_node(weak_level_set(rep, pGrid))}};
      json members = json::array();
      for (const auto& m : rep.K.members) members.push_back(vparallelogram_node(m));
      node["members"] = members;
      json sigma = json::array();
      for (const auto& [v, w] : rep.sigma.image())
        sigma.push_back(json::array({v.bits(), w.bits()}));
      node["sigma"] = sigma;
      reports.push_back(node);
    }
    out["kakeya"] = reports;
  }
  return dump_report(out);
}

std::string measure_report_json(const RunConfig& cfg, const MeasureInput& input, const Rat& value) {
  json out = envelope(cfg, input.canonicalJson);
  out["measure"] = rat_node(value);
  return dump_report(out);
}

std::string maximal_report_json(const RunConfig& cfg, const MaximalInput& input,
                                const MaximalBound& bound) {
  json out = envelope(cfg, input.canonicalJson);
  out["value"] = rat_node(bound.value);
  out["bestCandidate"] = bound.bestCandidate;
  return dump_report(out);
}

RenderScene parse_render_scene(const std::string& text) {
  json doc = parse_text(text);
  if (!doc.is_object()) bad_input("$", "expected a top-level object");
  RenderScene scene;
  auto tree_from = [&](const json& node, const std::string& path) {
    if (!node.is_array()) bad_input(path, "expected an array of bit strings");
    std::vector<std::string> bits;
    for (const auto& b : node) {
      if (!b.is_string()) bad_input(path, "expected bit strings");
      bits.push_back(b.get<std::string>());
    }
    try {
      return DyadicTree::from_bits(bits);
    } catch (const Error& e) {
      bad_input(path, e.what());
    }
  };
  if (doc.contains("tree")) {
    check_keys(doc, {"tree"}, "$");
    scene.trees.emplace_back(0, tree_from(doc["tree"], "$.tree"));
    return scene;
  }
  if (!doc.contains("command")) bad_input("$", "expected a report or a {\"tree\": [...]} object");
  std::string command = doc["command"].get<std::string>();
  if (command == "kakeya") {
    const json& members = field(field(doc, "report", "$"), "members", "$.report");
    for (std::size_t i = 0; i < members.size(); ++i)
      scene.members.push_back(
          parse_vparallelogram(members[i], "$.report.members[" + std::to_string(i) + "]"));
    return scene;
  }
  if (command == "analyze") {
    const json& classes = field(doc, "classes", "$");
    for (const auto& cls : classes)
      scene.trees.emplace_back(cls["symmetryClass"].get<int>(),
                               tree_from(cls["tree"], "$.classes[].tree"));
    return scene;
  }
  if (command == "classify") {
    if (doc.contains("kakeya") && !doc["kakeya"].empty()) {
      const json& members = field(doc["kakeya"][0], "members", "$.kakeya[0]");
      for (std::size_t i = 0; i < members.size(); ++i)
        scene.members.push_back(
            parse_vparallelogram(members[i], "$.kakeya[0].members[" + std::to_string(i) + "]"));
      return scene;
    }
    bad_input("$", "classify report has no kakeya scene to render");
  }
  bad_input("$.command", "no renderable scene in a '" + command + "' report");
}

}  // namespace kakeya
