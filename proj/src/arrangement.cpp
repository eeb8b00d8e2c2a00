#include "tripoly/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "tripoly/errors.hpp"

namespace tripoly {

namespace {

constexpr double kSameFamilyTolerance = 1e-12;

enum WindowEdge { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };

struct Incidence {
  double t;
  int vertex;
  int partner;
};

// A chain is a line or window edge with its vertices sorted by parameter.
struct Chain {
  int id;
  Point direction;
  std::vector<Incidence> incidences;
};

[[noreturn]] void degenerate(const std::string& what, int a, int b) {
  throw DegenerateInputError(what + " (lines " + std::to_string(a) + " and " + std::to_string(b) + ")", a, b);
}

struct Clip {
  bool active = false;
  double t_entry = 0.0;
  double t_exit = 0.0;
  int entry_edge = -1;
  int exit_edge = -1;
};

// Parameter interval of a line inside [-R, R]^2, with the window edges it crosses.
Clip clip_line(const DirectedLine& line, double R, int boundary_base) {
  const Point d = line.direction();
  const Point b = line.anchor();
  Clip clip;

  struct Slab {
    double enter, leave;
    int enter_edge, leave_edge;
  };
  auto slab = [&](double dc, double bc, int low_edge, int high_edge) -> Slab {
    double t_low = (-R - bc) / dc;
    double t_high = (R - bc) / dc;
    if (dc > 0) return {t_low, t_high, low_edge, high_edge};
    return {t_high, t_low, high_edge, low_edge};
  };

  // Every family has a nonzero x component; family 0 is horizontal.
  const Slab sx = slab(d.x, b.x, kLeft, kRight);
  if (std::abs(d.y) < 1e-15) {
    if (std::abs(std::abs(b.y) - R) <= kGeometryTolerance) {
      degenerate("line coincides with a window edge", line.id, boundary_base + (b.y > 0 ? kTop : kBottom));
    }
    if (std::abs(b.y) > R) return clip;
    clip = {true, sx.enter, sx.leave, sx.enter_edge, sx.leave_edge};
    return clip;
  }
  const Slab sy = slab(d.y, b.y, kBottom, kTop);

  const double t_entry = std::max(sx.enter, sy.enter);
  const double t_exit = std::min(sx.leave, sy.leave);
  if (t_exit < t_entry - kGeometryTolerance) return clip;
  if (t_exit - t_entry <= kGeometryTolerance) degenerate("line grazes a window corner", line.id, boundary_base);
  if (std::abs(sx.enter - sy.enter) <= kGeometryTolerance || std::abs(sx.leave - sy.leave) <= kGeometryTolerance) {
    degenerate("line passes through a window corner", line.id, boundary_base);
  }
  clip.active = true;
  clip.t_entry = t_entry;
  clip.t_exit = t_exit;
  clip.entry_edge = sx.enter > sy.enter ? sx.enter_edge : sy.enter_edge;
  clip.exit_edge = sx.leave < sy.leave ? sx.leave_edge : sy.leave_edge;
  return clip;
}

// Moves a boundary point exactly onto its window edge.
Point snap_to_edge(Point p, int edge, double R) {
  switch (edge) {
  case kBottom: p.y = -R; break;
  case kTop: p.y = R; break;
  case kLeft: p.x = -R; break;
  case kRight: p.x = R; break;
  }
  return p;
}

void check_same_family_offsets(const LineRealization& realization) {
  for (int k = 0; k < 3; ++k) {
    std::vector<const DirectedLine*> family;
    for (const auto& line : realization.lines) {
      if (line.family.index() == k) family.push_back(&line);
    }
    std::sort(family.begin(), family.end(), [](auto* a, auto* b) { return a->offset < b->offset; });
    for (std::size_t i = 1; i < family.size(); ++i) {
      if (family[i]->offset - family[i - 1]->offset <= kSameFamilyTolerance) {
        degenerate("parallel lines with coincident offsets", family[i - 1]->id, family[i]->id);
      }
    }
  }
}

} // namespace

long Arrangement::euler_characteristic() const {
  return static_cast<long>(vertices_.size()) - static_cast<long>(edge_count()) +
         static_cast<long>(faces_.size()) + 1;
}

Arrangement build(const LineRealization& realization) {
  check_same_family_offsets(realization);

  const double R = realization.window.half_width;
  const auto& lines = realization.lines;
  const int base = static_cast<int>(lines.size());

  Arrangement arr;
  arr.boundary_base_ = base;
  arr.window_ = realization.window;
  auto& vertices = arr.vertices_;

  auto add_vertex = [&](int a, int b, Point pos) {
    vertices.push_back({std::min(a, b), std::max(a, b), pos});
    return static_cast<int>(vertices.size()) - 1;
  };

  // Window edge chains, parametrized by x (bottom, top) or y (left, right).
  std::array<Chain, 4> edges{Chain{base + kBottom, {1, 0}, {}}, Chain{base + kRight, {0, 1}, {}},
                             Chain{base + kTop, {1, 0}, {}}, Chain{base + kLeft, {0, 1}, {}}};
  auto edge_param = [](int edge, Point p) { return (edge == kBottom || edge == kTop) ? p.x : p.y; };
  auto add_corner = [&](int e1, int e2, Point pos) {
    const int v = add_vertex(base + e1, base + e2, pos);
    edges[e1].incidences.push_back({edge_param(e1, pos), v, base + e2});
    edges[e2].incidences.push_back({edge_param(e2, pos), v, base + e1});
  };
  add_corner(kBottom, kRight, {R, -R});
  add_corner(kRight, kTop, {R, R});
  add_corner(kTop, kLeft, {-R, R});
  add_corner(kLeft, kBottom, {-R, -R});

  // Line chains for every line meeting the window.
  std::vector<Chain> chains;
  chains.reserve(lines.size());
  for (const auto& line : lines) {
    const Clip clip = clip_line(line, R, base);
    if (!clip.active) continue;
    Chain chain{line.id, line.direction(), {}};
    for (auto [t, edge] : {std::pair{clip.t_entry, clip.entry_edge}, std::pair{clip.t_exit, clip.exit_edge}}) {
      const Point pos = snap_to_edge(line.anchor() + t * line.direction(), edge, R);
      const int v = add_vertex(line.id, base + edge, pos);
      chain.incidences.push_back({t, v, base + edge});
      edges[edge].incidences.push_back({edge_param(edge, pos), v, line.id});
    }
    chains.push_back(std::move(chain));
  }

  // Interior crossings.
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const DirectedLine& a = lines[chains[i].id];
    for (std::size_t j = i + 1; j < chains.size(); ++j) {
      const DirectedLine& b = lines[chains[j].id];
      if (a.family == b.family) continue;
      const Point pos = intersect(a, b);
      const double m = std::max(std::abs(pos.x), std::abs(pos.y));
      if (m > R + kGeometryTolerance) continue;
      if (m >= R - kGeometryTolerance) degenerate("crossing on the window boundary", a.id, b.id);
      const int v = add_vertex(a.id, b.id, pos);
      chains[i].incidences.push_back({dot(pos, a.direction()), v, b.id});
      chains[j].incidences.push_back({dot(pos, b.direction()), v, a.id});
    }
  }

  // Sort every chain and emit twin half-edge pairs between consecutive vertices.
  auto& half_edges = arr.half_edges_;
  std::vector<std::array<int, 4>> outgoing(vertices.size(), {-1, -1, -1, -1});
  std::vector<int> degree(vertices.size(), 0);
  std::vector<Point> he_direction;
  auto push_out = [&](int vertex, int he) {
    if (degree[vertex] == 4) throw std::logic_error("arrangement vertex with more than four incident half-edges");
    outgoing[vertex][degree[vertex]++] = he;
  };
  auto emit_chain = [&](Chain& chain) {
    auto& inc = chain.incidences;
    std::sort(inc.begin(), inc.end(), [](const Incidence& x, const Incidence& y) {
      return x.t < y.t || (x.t == y.t && x.partner < y.partner);
    });
    for (std::size_t k = 1; k < inc.size(); ++k) {
      if (inc[k].t - inc[k - 1].t <= kGeometryTolerance) {
        degenerate("three lines through a common point", inc[k - 1].partner, inc[k].partner);
      }
      const int forward = static_cast<int>(half_edges.size());
      half_edges.push_back({inc[k - 1].vertex, forward + 1, -1, -1, chain.id});
      half_edges.push_back({inc[k].vertex, forward, -1, -1, chain.id});
      he_direction.push_back(chain.direction);
      he_direction.push_back(-1.0 * chain.direction);
      push_out(inc[k - 1].vertex, forward);
      push_out(inc[k].vertex, forward + 1);
    }
  };
  for (auto& edge : edges) emit_chain(edge);
  for (auto& chain : chains) emit_chain(chain);

  // Counterclockwise order of outgoing half-edges; next(e) is the clockwise
  // neighbour of twin(e) around e's head, which keeps bounded faces on the left.
  std::vector<double> angle(half_edges.size());
  for (std::size_t e = 0; e < half_edges.size(); ++e) angle[e] = std::atan2(he_direction[e].y, he_direction[e].x);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    auto first = outgoing[v].begin();
    std::sort(first, first + degree[v], [&](int x, int y) { return angle[x] < angle[y]; });
  }
  for (std::size_t e = 0; e < half_edges.size(); ++e) {
    const int twin = half_edges[e].twin;
    const int head = half_edges[twin].origin;
    const auto& out = outgoing[head];
    const int deg = degree[head];
    int k = 0;
    while (out[k] != twin) ++k;
    half_edges[e].next = out[(k + deg - 1) % deg];
  }

  // Face walk.
  int outer_faces = 0;
  for (std::size_t start = 0; start < half_edges.size(); ++start) {
    if (half_edges[start].face != -1) continue;
    Face face;
    const int face_id = static_cast<int>(arr.faces_.size());
    int e = static_cast<int>(start);
    do {
      half_edges[e].face = face_id;
      const int v = half_edges[e].origin;
      face.loop.push_back(v);
      face.vertices.push_back(vertices[v].position);
      face.touches_boundary = face.touches_boundary || vertices[v].second >= base;
      e = half_edges[e].next;
    } while (e != static_cast<int>(start));

    const Polygon poly = Polygon::from_vertices(face.vertices);
    const double area = poly.signed_area();
    if (area < 0.0) {
      ++outer_faces;
      // Keep the outer face out of the bounded list; mark its half-edges.
      for (int x = static_cast<int>(start);;) {
        half_edges[x].face = std::numeric_limits<int>::max();
        x = half_edges[x].next;
        if (x == static_cast<int>(start)) break;
      }
      continue;
    }
    face.vertex_count = static_cast<int>(face.loop.size());
    face.lex_min = lex_min_vertex(poly);
    face.area = area;
    arr.faces_.push_back(std::move(face));
  }
  if (outer_faces != 1) throw std::logic_error("arrangement has " + std::to_string(outer_faces) + " outer faces");
  for (auto& he : half_edges) {
    if (he.face == std::numeric_limits<int>::max()) he.face = -1;
  }
  return arr;
}

std::vector<Face> interior_faces(const Arrangement& arrangement) {
  std::vector<Face> out;
  for (const auto& face : arrangement.faces()) {
    if (!face.touches_boundary) out.push_back(face);
  }
  return out;
}

void write_faces_csv(std::ostream& out, const Arrangement& arrangement) {
  out << "face_id,vertex_count,touches_boundary,lex_min_x,lex_min_y,area\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < arrangement.faces().size(); ++i) {
    const Face& f = arrangement.faces()[i];
    out << i << ',' << f.vertex_count << ',' << (f.touches_boundary ? 1 : 0) << ',' << f.lex_min.x << ','
        << f.lex_min.y << ',' << f.area << '\n';
  }
  out.precision(old_precision);
}

} // namespace tripoly
