#include "kakeya/basis_pipeline.hpp"

#include <algorithm>
#include <tuple>

#include "kakeya/errors.hpp"

namespace kakeya {

Point DihedralTransform::apply(const Point& p) const {
  return {Rat(a) * p.x + Rat(b) * p.y, Rat(c) * p.x + Rat(d) * p.y};
}

ConvexPolygon DihedralTransform::apply(const ConvexPolygon& s) const {
  std::vector<Point> v;
  v.reserve(s.size());
  for (const Point& p : s.vertices()) v.push_back(apply(p));
  return ConvexPolygon(std::move(v));
}

const std::array<DihedralTransform, 8>& dihedral_transforms() {
  static const std::array<DihedralTransform, 8> t = {{
      {0, 1, 0, 0, 1},
      {1, 1, 0, 0, -1},
      {2, -1, 0, 0, 1},
      {3, -1, 0, 0, -1},
      {4, 0, 1, 1, 0},
      {5, 0, 1, -1, 0},
      {6, 0, -1, 1, 0},
      {7, 0, -1, -1, 0},
  }};
  return t;
}

namespace {

using Dir = std::pair<mpz_class, mpz_class>;

Dir canonical_sign(Dir d) {
  if (d.first < 0 || (d.first == 0 && d.second < 0)) {
    d.first = -d.first;
    d.second = -d.second;
  }
  return d;
}

// primitive integer direction of the rational vector (dx, dy)
Dir primitive_direction(const Rat& dx, const Rat& dy) {
  mpz_class px = dx.num() * dy.den();
  mpz_class py = dy.num() * dx.den();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), px.get_mpz_t(), py.get_mpz_t());
  if (g != 0) {
    px /= g;
    py /= g;
  }
  return canonical_sign({px, py});
}

// a direction and its perpendicular produce the same aligned rectangle
Dir direction_key(const Dir& d) {
  Dir perp = canonical_sign({-d.second, d.first});
  return std::min(d, perp);
}

// minimal bounding rectangle of s with sides parallel to d and its
// perpendicular; exact via the rational similarity (x,y) -> (px+qy, -qx+py)
ConvexPolygon aligned_bounding_rectangle(const ConvexPolygon& s, const Dir& d) {
  Rat p(d.first, mpz_class(1)), q(d.second, mpz_class(1));
  const auto& verts = s.vertices();
  Rat ux0, ux1, uy0, uy1;
  bool first = true;
  for (const Point& v : verts) {
    Rat ux = p * v.x + q * v.y;
    Rat uy = -q * v.x + p * v.y;
    if (first) {
      ux0 = ux1 = ux;
      uy0 = uy1 = uy;
      first = false;
    } else {
      ux0 = min(ux0, ux);
      ux1 = max(ux1, ux);
      uy0 = min(uy0, uy);
      uy1 = max(uy1, uy);
    }
  }
  Rat det = p * p + q * q;
  auto back = [&](const Rat& ux, const Rat& uy) {
    return Point{(p * ux - q * uy) / det, (q * ux + p * uy) / det};
  };
  return ConvexPolygon({back(ux0, uy0), back(ux1, uy0), back(ux1, uy1), back(ux0, uy1)});
}

void require_rectangle(const ConvexPolygon& r, const char* who) {
  if (r.size() != 4) raise(Errc::InvalidInput, std::string(who) + " needs a rectangle");
  const auto& v = r.vertices();
  Point e1{v[1].x - v[0].x, v[1].y - v[0].y};
  Point e2{v[2].x - v[1].x, v[2].y - v[1].y};
  Point e3{v[3].x - v[2].x, v[3].y - v[2].y};
  Point e4{v[0].x - v[3].x, v[0].y - v[3].y};
  bool opposite = (e3.x == -e1.x && e3.y == -e1.y && e4.x == -e2.x && e4.y == -e2.y);
  bool perpendicular = (e1.x * e2.x + e1.y * e2.y).sign() == 0;
  if (!opposite || !perpendicular) raise(Errc::InvalidInput, std::string(who) + " needs a rectangle");
}

// true when some longest side of the rectangle has slope in [0,1]
bool longest_side_slope_unit(const ConvexPolygon& rect) {
  const auto& v = rect.vertices();
  Point e1{v[1].x - v[0].x, v[1].y - v[0].y};
  Point e2{v[2].x - v[1].x, v[2].y - v[1].y};
  Rat l1 = e1.x * e1.x + e1.y * e1.y;
  Rat l2 = e2.x * e2.x + e2.y * e2.y;
  auto slope_ok = [](const Point& e) {
    if (e.x.sign() == 0) return false;
    return (e.y * e.x).sign() >= 0 && e.y.abs() <= e.x.abs();
  };
  if (l1 >= l2 && slope_ok(e1)) return true;
  if (l2 >= l1 && slope_ok(e2)) return true;
  return false;
}

mpz_class floor_times_pow2(const Rat& r, unsigned k) {
  mpz_class num = r.num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), k);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), r.den().get_mpz_t());
  return out;
}

mpz_class ceil_times_pow2(const Rat& r, unsigned k) {
  mpz_class num = r.num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), k);
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), r.den().get_mpz_t());
  return out;
}

}  // namespace

ConvexPolygon lassak_rectangle(const ConvexPolygon& s) {
  const auto& verts = s.vertices();
  std::vector<std::pair<Dir, Dir>> dirs;  // (key, direction)
  auto add_dir = [&](const Rat& dx, const Rat& dy) {
    if (dx.sign() == 0 && dy.sign() == 0) return;
    Dir d = primitive_direction(dx, dy);
    dirs.emplace_back(direction_key(d), d);
  };
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Point& a = verts[i];
    const Point& b = verts[(i + 1) % verts.size()];
    add_dir(b.x - a.x, b.y - a.y);
  }
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      add_dir(verts[j].x - verts[i].x, verts[j].y - verts[i].y);
  std::sort(dirs.begin(), dirs.end());
  dirs.erase(std::unique(dirs.begin(), dirs.end(),
                         [](const auto& a, const auto& b) { return a.first == b.first; }),
             dirs.end());

  struct Candidate {
    Rat area;
    Dir key;
    ConvexPolygon rect;
  };
  std::vector<Candidate> candidates;
  for (const auto& [key, d] : dirs) {
    ConvexPolygon rect = aligned_bounding_rectangle(s, d);
    candidates.push_back({rect.area(), key, std::move(rect)});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.area != b.area) return a.area < b.area;
    return a.key < b.key;
  });

  Rat sArea = s.area();
  for (const auto& c : candidates) {
    if (!c.rect.contains(s))
      raise(Errc::VerificationFailure, "aligned bounding rectangle misses the polygon");
    if (c.area > Rat(4) * sArea) continue;
    if (contains_translate_of_dilate(s, c.rect, Rat(1, 2))) return c.rect;
  }
  raise(Errc::ApproximationFailure, "no candidate rectangle verified the half-dilate predicates");
}

EnclosingResult enclosing_parallelogram(const ConvexPolygon& rectangle, unsigned maxK) {
  require_rectangle(rectangle, "enclosing_parallelogram");
  if (maxK > 40) raise(Errc::InvalidInput, "maxK too large");

  const DihedralTransform* chosen = nullptr;
  for (const auto& t : dihedral_transforms()) {
    if (longest_side_slope_unit(t.apply(rectangle))) {
      chosen = &t;
      break;
    }
  }
  if (!chosen) raise(Errc::VerificationFailure, "no dihedral transform normalizes the rectangle");
  ConvexPolygon r = chosen->apply(rectangle);
  ConvexPolygon rPoly = r;

  Interval px = r.proj_x();
  Rat x0 = px.lo, w = px.length();
  if (w.sign() <= 0) raise(Errc::VerificationFailure, "normalized rectangle has empty x-projection");
  Rat rArea = r.area();

  // spread(s) = max_v (v.y - s (v.x - x0)) - min over v; the feasibility
  // region {s : spread(s) <= side} is the intersection of the linear
  // constraints over ordered corner pairs.
  const auto& verts = r.vertices();

  std::optional<EnclosingResult> best;
  for (unsigned k = 0; k <= maxK; ++k) {
    Rat side = Rat::pow2(static_cast<long>(k)) * w;
    bool feasible = true;
    std::optional<Rat> sLo, sHi;
    for (const Point& u : verts) {
      for (const Point& v : verts) {
        Rat a = u.y - v.y;
        Rat b = u.x - v.x;  // constraint a - s b <= side
        if (b.sign() == 0) {
          if (a > side) feasible = false;
        } else if (b.sign() > 0) {
          Rat bound = (a - side) / b;  // s >= bound
          sLo = sLo ? max(*sLo, bound) : bound;
        } else {
          Rat bound = (a - side) / b;  // s <= bound
          sHi = sHi ? min(*sHi, bound) : bound;
        }
      }
    }
    if (!feasible) continue;
    Rat lo = sLo ? max(*sLo, Rat(0)) : Rat(0);
    Rat hi = sHi ? *sHi : Rat(1);
    if (hi >= Rat(1)) hi = Rat(1) - Rat::pow2(static_cast<long>(k));  // slope stays below 1
    if (lo > hi) continue;
    mpz_class jLoZ = ceil_times_pow2(lo, k);
    mpz_class jHiZ = floor_times_pow2(hi, k);
    if (jLoZ < 0) jLoZ = 0;
    if (jHiZ < jLoZ) continue;
    if (!jLoZ.fits_ulong_p()) continue;
    std::uint64_t jLo = jLoZ.get_ui();
    std::uint64_t jHi = jHiZ.fits_ulong_p() ? jHiZ.get_ui() : jLo + 4096;
    jHi = std::min(jHi, jLo + 4096);  // bounded scan; the low end passes first

    for (std::uint64_t j = jLo; j <= jHi; ++j) {
      Rat slope = Rat(static_cast<long long>(j)) * Rat::pow2(static_cast<long>(k));
      Rat cLo = verts[0].y - slope * (verts[0].x - x0);
      Rat cHi = cLo;
      for (const Point& v : verts) {
        Rat c = v.y - slope * (v.x - x0);
        cLo = min(cLo, c);
        cHi = max(cHi, c);
      }
      if (cHi - cLo > side) continue;
      VParallelogram p{x0, px.hi, cLo, slope, side};
      if (p.area() > Rat(32) * rArea) continue;
      if (!contains_translate_of_dilate(rPoly, p.to_polygon(), Rat(1, 32))) continue;
      for (const Point& v : verts)
        if (!p.contains(v)) raise(Errc::VerificationFailure, "cover misses a rectangle corner");
      best = EnclosingResult{p, rPoly, chosen->index, k, j};
      break;  // smallest j at this k; larger k still overrides
    }
  }
  if (!best) raise(Errc::ResolutionExceeded, "no slope resolution k <= maxK verified the cover");
  return *best;
}

VParallelogram decode_code(const Vertex& v) {
  return {Rat(0), Rat(1), Rat(0), v.slope(), Rat::pow2(v.height())};
}

std::uint64_t code_index(const Vertex& v) {
  if (v.height() >= 63) raise(Errc::InvalidCode, "code height too large");
  std::uint64_t j = 0;
  const std::string& b = v.bits();
  for (std::size_t i = 1; i < b.size(); ++i) j = (j << 1) | (b[i] == '1' ? 1u : 0u);
  return j;
}

namespace {

void verify_record(const GeneratorRecord& rec) {
  auto fail = [](const std::string& msg) { raise(Errc::VerificationFailure, "generator record: " + msg); };
  if (!rec.rectangle.contains(rec.source)) fail("source not inside rectangle");
  if (rec.rectangle.area() > Rat(4) * rec.source.area()) fail("rectangle area above 4x");
  if (!contains_translate_of_dilate(rec.source, rec.rectangle, Rat(1, 2)))
    fail("half dilate of rectangle does not fit the source");
  const VParallelogram& p = rec.parallelogram;
  if (!p.to_polygon().contains(rec.rectangle)) fail("rectangle not inside parallelogram");
  if (p.area() > Rat(32) * rec.rectangle.area()) fail("parallelogram area above 32x");
  if (!contains_translate_of_dilate(rec.rectangle, p.to_polygon(), Rat(1, 32)))
    fail("1/32 dilate of parallelogram does not fit the rectangle");
  if (p.slope.sign() < 0 || p.slope >= Rat(1)) fail("slope outside [0,1)");
  Rat unit = Rat::pow2(rec.k) * p.width();
  if (p.sideLength != unit) fail("side length is not 2^-k times the width");
  Rat multiple = p.proj_y().length() / p.sideLength;
  if (multiple.den() != 1) fail("y-projection not an integer multiple of the side");
  if (p.slope != rec.canonicalCode.slope()) fail("code slope mismatch");
  if (rec.canonicalCode.height() != rec.k) fail("code height mismatch");
}

}  // namespace

GeneratorRecord process_generator(const ConvexPolygon& s, unsigned maxK) {
  ConvexPolygon rect = lassak_rectangle(s);
  EnclosingResult enc = enclosing_parallelogram(rect, maxK);
  const DihedralTransform& t = dihedral_transforms()[static_cast<std::size_t>(enc.symmetryClass)];
  GeneratorRecord rec{t.apply(s), enc.normalizedRectangle, enc.parallelogram,
                      enc.symmetryClass,  encode_code(enc.k, enc.j), enc.k, enc.j};
  verify_record(rec);
  return rec;
}

GeneratorRecord record_from_code(const Vertex& code) {
  VParallelogram p = decode_code(code);
  ConvexPolygon poly = p.to_polygon();
  GeneratorRecord rec{poly, poly, p, 0, code, code.height(), code_index(code)};
  verify_record(rec);
  return rec;
}

std::vector<GeneratorRecord> process_generators(const std::vector<GeneratorSpec>& specs,
                                                unsigned maxK) {
  std::vector<GeneratorRecord> out;
  for (const auto& spec : specs) {
    if (const auto* poly = std::get_if<PolygonSpec>(&spec)) {
      out.push_back(process_generator(poly->polygon, maxK));
    } else if (const auto* code = std::get_if<CodeSpec>(&spec)) {
      out.push_back(record_from_code(code->code));
    } else {
      const auto& slopes = std::get<SlopesSpec>(spec);
      for (std::uint64_t j : slopes.j) out.push_back(record_from_code(encode_code(slopes.k, j)));
    }
  }
  return out;
}

DirectionForest build_direction_tree(const std::vector<GeneratorRecord>& records, unsigned depth) {
  DirectionForest forest;
  forest.depth = depth;
  std::map<int, std::set<Vertex>> codes;
  std::map<int, std::vector<GeneratorRecord>> byClass;
  for (const auto& rec : records) {
    byClass[rec.symmetryClass].push_back(rec);
    if (rec.canonicalCode.height() <= depth) codes[rec.symmetryClass].insert(rec.canonicalCode);
  }
  if (records.empty()) byClass[0] = {};
  for (auto& [cls, recs] : byClass) {
    std::set<Vertex> vs = codes.count(cls) ? codes[cls] : std::set<Vertex>{};
    vs.insert(Vertex::root());  // the root direction is always part of the family
    DirectionTree dt{ancestor_closure(vs), std::move(recs), depth};
    forest.byClass.emplace(cls, std::move(dt));
  }
  return forest;
}

DirectionForest build_direction_tree(const std::vector<ConvexPolygon>& generators, unsigned depth,
                                     unsigned maxK) {
  std::vector<GeneratorRecord> records;
  records.reserve(generators.size());
  for (const auto& g : generators) records.push_back(process_generator(g, maxK));
  return build_direction_tree(records, depth);
}

}  // namespace kakeya
