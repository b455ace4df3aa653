#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "io.hpp"

namespace elastica {

namespace {

constexpr double kSliceBox = 120.0;  // drawing cell per time slice, px
constexpr double kMargin = 10.0;

struct Frame {
  Vec2 lo, hi;
  void include(Vec2 p) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// maps model coordinates of slice j into its drawing cell (y flipped)
struct CellMap {
  Vec2 center;
  double scale;
  double x0;
  Vec2 operator()(Vec2 p) const {
    return {x0 + kSliceBox * 0.5 + (p.x - center.x) * scale,
            kMargin + kSliceBox * 0.5 - (p.y - center.y) * scale};
  }
};

CellMap cell_map(const Chain& c, size_t j) {
  Frame f{c.vertex(0), c.vertex(0)};
  for (const Vec2& v : c.vertices()) f.include(v);
  const double extent =
      std::max({f.hi.x - f.lo.x, f.hi.y - f.lo.y, 1e-9});
  CellMap m;
  m.center = (f.lo + f.hi) * 0.5;
  m.scale = (kSliceBox * 0.72) / extent;
  m.x0 = kMargin + static_cast<double>(j) * (kSliceBox + kMargin);
  return m;
}

void emit_outline(std::ostringstream& out, const Chain& c, const CellMap& map) {
  out << "  <polygon fill=\"none\" stroke=\"#20506e\" stroke-width=\"1\" points=\"";
  for (size_t k = 0; k < c.size(); ++k) {
    const Vec2 p = map(c.vertex(k));
    out << fmt(p.x) << ',' << fmt(p.y);
    if (k + 1 < c.size()) out << ' ';
  }
  out << "\"/>\n";
}

void emit_arrow(std::ostringstream& out, Vec2 from, Vec2 to) {
  const Vec2 d = to - from;
  const double len = d.norm();
  if (len < 0.25) return;
  const Vec2 u = d / len;
  const Vec2 w = u.perp();
  const double head = std::min(3.0, 0.4 * len);
  const Vec2 h1 = to - u * head + w * (0.5 * head);
  const Vec2 h2 = to - u * head - w * (0.5 * head);
  out << "  <line stroke=\"#b03030\" stroke-width=\"0.8\" x1=\"" << fmt(from.x) << "\" y1=\""
      << fmt(from.y) << "\" x2=\"" << fmt(to.x) << "\" y2=\"" << fmt(to.y) << "\"/>\n";
  out << "  <polygon fill=\"#b03030\" points=\"" << fmt(to.x) << ',' << fmt(to.y) << ' '
      << fmt(h1.x) << ',' << fmt(h1.y) << ' ' << fmt(h2.x) << ',' << fmt(h2.y) << "\"/>\n";
}

std::string svg_header(size_t cells) {
  const double width = kMargin + static_cast<double>(cells) * (kSliceBox + kMargin);
  const double height = kSliceBox + 2.0 * kMargin;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
  return out.str();
}

}  // namespace

void write_path_svg(const PathOfChains& path, const std::string& file) {
  std::ostringstream out;
  out << svg_header(path.slice_count());
  for (size_t j = 0; j < path.slice_count(); ++j)
    emit_outline(out, path.slice(j), cell_map(path.slice(j), j));
  out << "</svg>\n";
  atomic_write(file, out.str());
}

void write_gradient_svg(const PathOfChains& path, const GradientField& grad,
                        const std::string& file, bool uniform_scale) {
  if (grad.slices.size() != path.slice_count() || grad.n != path.chain_size())
    throw InvalidArgument("gradient svg: path and gradient shapes disagree");
  std::ostringstream out;
  out << svg_header(path.slice_count());

  double global_max = 0.0;
  for (const SliceGradient& s : grad.slices)
    for (const Vec2& z : s.z) global_max = std::max(global_max, z.norm());

  for (size_t j = 0; j < path.slice_count(); ++j) {
    const Chain& c = path.slice(j);
    const CellMap map = cell_map(c, j);
    emit_outline(out, c, map);
    double ref = global_max;
    if (!uniform_scale) {
      ref = 0.0;
      for (const Vec2& z : grad.slices[j].z) ref = std::max(ref, z.norm());
    }
    if (ref <= 0.0) continue;
    // longest arrow spans a quarter of the drawing cell
    const double arrow_scale = (kSliceBox * 0.25) / ref;
    for (size_t k = 0; k < c.size(); ++k) {
      const Vec2 z = grad.slices[j].z[k];
      const Vec2 from = map(c.vertex(k));
      // negative gradient; the map flips y, so flip the displacement too
      const Vec2 to = from + Vec2(-z.x, z.y) * arrow_scale;
      emit_arrow(out, from, to);
    }
  }
  out << "</svg>\n";
  atomic_write(file, out.str());
}

}  // namespace elastica
