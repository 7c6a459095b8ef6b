#include "kakeya/svg_render.hpp"

#include <sstream>

#include "kakeya/errors.hpp"

namespace kakeya {

namespace {

constexpr long kScale = 512;  // svg units per unit length

// truncated fixed-point rendering with up to 3 fractional digits
std::string svg_num(const Rat& v) {
  mpz_class scaled = (v * Rat(1000)).num() / (v * Rat(1000)).den();  // trunc toward zero
  bool neg = scaled < 0;
  mpz_class a = abs(scaled);
  mpz_class whole = a / 1000;
  long frac = mpz_class(a % 1000).get_si();
  std::string out = (neg ? "-" : "") + whole.get_str();
  if (frac != 0) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%03ld", frac);
    std::string f(buf);
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += "." + f;
  }
  return out;
}

std::string svg_header(const Rat& width, const Rat& height) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(width) << "\" height=\""
     << svg_num(height) << "\" viewBox=\"0 0 " << svg_num(width) << " " << svg_num(height)
     << "\">\n";
  return os.str();
}

}  // namespace

std::string svg_kakeya_scene(const std::vector<VParallelogram>& members) {
  if (members.empty()) raise(Errc::EmptySet, "nothing to render");
  Rat yLo = members[0].proj_y().lo, yHi = members[0].proj_y().hi;
  Rat xLo = members[0].x0, xHi = members[0].x1;
  for (const auto& m : members) {
    Interval py = m.proj_y();
    yLo = min(yLo, py.lo);
    yHi = max(yHi, py.hi);
    xLo = min(xLo, m.x0);
    xHi = max(xHi, m.x1);
  }
  Rat margin(16);
  Rat width = (xHi - xLo) * Rat(kScale) + margin * Rat(2);
  Rat height = (yHi - yLo) * Rat(kScale) + margin * Rat(2);
  auto X = [&](const Rat& x) { return (x - xLo) * Rat(kScale) + margin; };
  auto Y = [&](const Rat& y) { return (yHi - y) * Rat(kScale) + margin; };

  std::ostringstream os;
  os << svg_header(width, height);
  os << "<rect x=\"0\" y=\"0\" width=\"" << svg_num(width) << "\" height=\"" << svg_num(height)
     << "\" fill=\"#ffffff\"/>\n";
  // slab shading [0,1] and [1,2]
  auto slab = [&](long a, long b, const char* color) {
    Rat ra(a), rb(b);
    if (rb <= xLo || ra >= xHi) return;
    ra = max(ra, xLo);
    rb = min(rb, xHi);
    os << "<rect x=\"" << svg_num(X(ra)) << "\" y=\"" << svg_num(Y(yHi)) << "\" width=\""
       << svg_num((rb - ra) * Rat(kScale)) << "\" height=\"" << svg_num((yHi - yLo) * Rat(kScale))
       << "\" fill=\"" << color << "\"/>\n";
  };
  slab(0, 1, "#eef3fb");
  slab(1, 2, "#fbf3ee");
  for (const auto& m : members) {
    auto c = m.corners();
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << " ";
      os << svg_num(X(c[i].x)) << "," << svg_num(Y(c[i].y));
    }
    os << "\" fill=\"#2b6cb0\" fill-opacity=\"0.35\" stroke=\"#1a365d\" stroke-width=\"0.6\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_kakeya(const KakeyaReport& report) { return svg_kakeya_scene(report.K.members); }

namespace {

void append_tree(std::ostringstream& os, const DyadicTree& tree, const Rat& yOffset,
                 const Rat& width) {
  const long levelGap = 96;
  const long nodeRadius = 7;
  bool labels = tree.size() <= 31;
  auto nodeX = [&](const Vertex& v) {
    // midpoint of the dyadic interval [j 2^-h, (j+1) 2^-h]
    Rat j = v.slope();
    Rat h = Rat::pow2(v.height());
    return (j + h / Rat(2)) * width;
  };
  auto nodeY = [&](const Vertex& v) {
    return yOffset + Rat(48) + Rat(static_cast<long long>(v.height()) * levelGap);
  };
  for (const Vertex& v : tree) {
    if (v.is_root()) continue;
    Vertex p = v.parent();
    if (!tree.contains(p)) continue;
    os << "<line x1=\"" << svg_num(nodeX(p)) << "\" y1=\"" << svg_num(nodeY(p)) << "\" x2=\""
       << svg_num(nodeX(v)) << "\" y2=\"" << svg_num(nodeY(v))
       << "\" stroke=\"#718096\" stroke-width=\"1.2\"/>\n";
  }
  for (const Vertex& v : tree) {
    os << "<circle cx=\"" << svg_num(nodeX(v)) << "\" cy=\"" << svg_num(nodeY(v)) << "\" r=\""
       << nodeRadius << "\" fill=\"#2b6cb0\" stroke=\"#1a365d\" stroke-width=\"1\"/>\n";
    if (labels) {
      os << "<text x=\"" << svg_num(nodeX(v)) << "\" y=\"" << svg_num(nodeY(v) + Rat(22))
         << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << v.bits()
         << "</text>\n";
    }
  }
}

}  // namespace

std::string svg_tree(const DyadicTree& tree) {
  return svg_trees({{0, tree}});
}

std::string svg_trees(const std::vector<std::pair<int, DyadicTree>>& classTrees) {
  if (classTrees.empty()) raise(Errc::EmptySet, "nothing to render");
  const Rat width(1024);
  const long levelGap = 96;
  Rat height(0);
  for (const auto& [cls, tree] : classTrees)
    height += Rat(96) + Rat(static_cast<long long>(tree.max_height()) * levelGap);
  std::ostringstream os;
  os << svg_header(width, height);
  os << "<rect x=\"0\" y=\"0\" width=\"" << svg_num(width) << "\" height=\"" << svg_num(height)
     << "\" fill=\"#ffffff\"/>\n";
  Rat offset(0);
  for (const auto& [cls, tree] : classTrees) {
    append_tree(os, tree, offset, width);
    offset += Rat(96) + Rat(static_cast<long long>(tree.max_height()) * levelGap);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace kakeya
