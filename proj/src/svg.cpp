#include "tripoly/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tripoly::svg {

namespace {

constexpr std::array<Rgb, 5> kAnchors = {{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += ch;
    }
  }
  return out;
}

std::string header(double width, double height) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
     << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

std::string polygon_points(const std::vector<Point>& pts, Point (*to_screen)(Point, const void*), const void* ctx) {
  std::string out;
  for (const Point& p : pts) {
    const Point s = to_screen(p, ctx);
    if (!out.empty()) out += ' ';
    out += fmt(s.x) + "," + fmt(s.y);
  }
  return out;
}

struct Frame {
  double x0, y0, scale, height;
};

Point frame_map(Point p, const void* ctx) {
  const auto* f = static_cast<const Frame*>(ctx);
  return {(p.x - f->x0) * f->scale, f->height - (p.y - f->y0) * f->scale};
}

} // namespace

std::string Rgb::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

const std::array<Rgb, 256>& color_map() {
  static const std::array<Rgb, 256> table = [] {
    std::array<Rgb, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double x = i / 255.0 * (kAnchors.size() - 1);
      const int k = std::min(static_cast<int>(x), static_cast<int>(kAnchors.size()) - 2);
      const double f = x - k;
      auto lerp = [f](std::uint8_t a, std::uint8_t b) {
        return static_cast<std::uint8_t>(std::lround(a + f * (static_cast<double>(b) - a)));
      };
      t[i] = {lerp(kAnchors[k].r, kAnchors[k + 1].r), lerp(kAnchors[k].g, kAnchors[k + 1].g),
              lerp(kAnchors[k].b, kAnchors[k + 1].b)};
    }
    return t;
  }();
  return table;
}

Rgb map_value(double v, double lo, double hi) {
  double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  t = std::clamp(t, 0.0, 1.0);
  return color_map()[static_cast<std::size_t>(std::lround(255.0 * t))];
}

Rgb vertex_count_tint(int n) {
  switch (n) {
  case 3: return {230, 85, 70};
  case 4: return {200, 215, 235};
  case 5: return {110, 190, 110};
  case 6: return {245, 170, 40};
  default: return {255, 255, 255};
  }
}

std::string render_tessellation(const Arrangement& arrangement, const LineRealization& realization) {
  const double R = arrangement.window().half_width;
  const double size = 800.0;
  const Frame frame{-R, -R, size / (2.0 * R), size};
  std::ostringstream os;
  os << header(size, size + 40);
  os << "<g id=\"faces\">\n";
  for (const Face& f : arrangement.faces()) {
    const Rgb fill = f.touches_boundary ? Rgb{245, 245, 245} : vertex_count_tint(f.vertex_count);
    os << "<polygon points=\"" << polygon_points(f.vertices, frame_map, &frame) << "\" fill=\"" << fill.hex()
       << "\" stroke=\"black\" stroke-width=\"0.6\"/>\n";
  }
  os << "</g>\n";
  const double a = arrangement.window().inner_half_width();
  const Point lo = frame_map({-a, a}, &frame);
  os << "<rect x=\"" << fmt(lo.x) << "\" y=\"" << fmt(lo.y) << "\" width=\"" << fmt(2 * a * frame.scale)
     << "\" height=\"" << fmt(2 * a * frame.scale) << "\" fill=\"none\" stroke=\"#333\" stroke-dasharray=\"6 4\"/>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"14\">\n";
  for (int n = 3; n <= 6; ++n) {
    const double x = 10 + (n - 3) * 110;
    os << "<rect x=\"" << x << "\" y=\"" << size + 12 << "\" width=\"16\" height=\"16\" fill=\""
       << vertex_count_tint(n).hex() << "\" stroke=\"black\"/>";
    os << "<text x=\"" << x + 22 << "\" y=\"" << size + 25 << "\">n = " << n << "</text>\n";
  }
  os << "<text x=\"470\" y=\"" << size + 25 << "\">p = " << fmt(realization.weights.p())
     << ", q = " << fmt(realization.weights.q()) << ", seed " << realization.seed << "</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_cells(const std::vector<CellSample>& cells) {
  const double panel = 220.0;
  const int columns = std::max(1, std::min(4, static_cast<int>(cells.size())));
  const int rows = static_cast<int>((cells.size() + columns - 1) / columns);
  std::ostringstream os;
  os << header(columns * panel, std::max(1, rows) * panel);
  os << "<g font-family=\"sans-serif\" font-size=\"14\">\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& verts = cells[i].polygon.vertices();
    double xmin = verts[0].x, xmax = verts[0].x, ymin = verts[0].y, ymax = verts[0].y;
    for (const Point& p : verts) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    const double extent = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double scale = (panel - 50.0) / extent;
    const double ox = (i % columns) * panel + 25.0;
    const double oy = (i / columns) * panel;
    std::string pts;
    for (const Point& p : verts) {
      if (!pts.empty()) pts += ' ';
      pts += fmt(ox + (p.x - xmin) * scale) + "," + fmt(oy + panel - 25.0 - (p.y - ymin) * scale);
    }
    os << "<polygon points=\"" << pts << "\" fill=\"" << vertex_count_tint(cells[i].spec->n).hex()
       << "\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    os << "<text x=\"" << fmt(ox) << "\" y=\"" << fmt(oy + 18) << "\">" << escape(cells[i].spec->symbol) << " ("
       << escape(cells[i].spec->id) << ")</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_heatmap(const std::vector<HeatmapPoint>& points, double step, const std::string& title,
                           bool mark_minimum) {
  const double plot = 600.0, margin = 60.0, bar = 90.0;
  const double width = plot + 2 * margin + bar, height = plot + 2 * margin;
  auto sx = [&](double p) { return margin + p * plot; };
  auto sy = [&](double q) { return margin + (1.0 - q) * plot; };

  double lo = 0.0, hi = 1.0;
  std::size_t extreme = 0;
  if (!points.empty()) {
    lo = hi = points[0].value;
    for (std::size_t i = 0; i < points.size(); ++i) {
      lo = std::min(lo, points[i].value);
      hi = std::max(hi, points[i].value);
      const bool better = mark_minimum ? points[i].value < points[extreme].value : points[i].value > points[extreme].value;
      if (better) extreme = i;
    }
  }

  std::ostringstream os;
  os << header(width, height);
  os << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (const auto& pt : points) {
    os << "<rect x=\"" << fmt(sx(pt.p - 0.5 * step)) << "\" y=\"" << fmt(sy(pt.q + 0.5 * step)) << "\" width=\""
       << fmt(step * plot) << "\" height=\"" << fmt(step * plot) << "\" fill=\"" << map_value(pt.value, lo, hi).hex()
       << "\"/>\n";
  }
  os << "</g>\n";
  os << "<polygon points=\"" << fmt(sx(0)) << ',' << fmt(sy(0)) << ' ' << fmt(sx(1)) << ',' << fmt(sy(0)) << ' '
     << fmt(sx(0)) << ',' << fmt(sy(1)) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  if (!points.empty()) {
    os << "<circle cx=\"" << fmt(sx(points[extreme].p)) << "\" cy=\"" << fmt(sy(points[extreme].q))
       << "\" r=\"5\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
  }
  // color bar
  const double bx = margin + plot + 30.0;
  for (int i = 0; i < 256; ++i) {
    const double y = margin + plot * (1.0 - (i + 1) / 256.0);
    os << "<rect x=\"" << fmt(bx) << "\" y=\"" << fmt(y) << "\" width=\"20\" height=\"" << fmt(plot / 256.0 + 0.5)
       << "\" fill=\"" << color_map()[i].hex() << "\"/>\n";
  }
  os << "<g font-family=\"sans-serif\" font-size=\"14\">\n";
  os << "<text x=\"" << fmt(bx + 24) << "\" y=\"" << fmt(margin + 5) << "\">" << fmt(hi) << "</text>\n";
  os << "<text x=\"" << fmt(bx + 24) << "\" y=\"" << fmt(margin + plot) << "\">" << fmt(lo) << "</text>\n";
  os << "<text x=\"" << fmt(margin) << "\" y=\"30\" font-size=\"18\">" << escape(title) << "</text>\n";
  os << "<text x=\"" << fmt(margin + plot / 2) << "\" y=\"" << fmt(height - 15) << "\">p</text>\n";
  os << "<text x=\"20\" y=\"" << fmt(margin + plot / 2) << "\">q</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

} // namespace tripoly::svg
