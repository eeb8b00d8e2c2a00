#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "tripoly/geometry.hpp"
#include "tripoly/line_process.hpp"

namespace tripoly {

/// A vertex of the clipped arrangement, identified by the two supporting
/// lines. Window edges carry ids boundary_base + {0 bottom, 1 right, 2 top, 3 left}.
struct ArrangementVertex {
  int first = 0; // first < second
  int second = 0;
  Point position;
};

struct HalfEdge {
  int origin = -1;
  int twin = -1;
  int next = -1;
  int face = -1;
  int line = -1; // supporting line or window edge id
};

struct Face {
  std::vector<int> loop; // vertex ids, counterclockwise
  std::vector<Point> vertices;
  bool touches_boundary = false;
  int vertex_count = 0;
  Point lex_min;
  double area = 0.0;

  Polygon polygon() const { return Polygon::from_vertices(vertices); }
};

/// Half-edge structure of a line realization clipped to its window.
class Arrangement {
public:
  const std::vector<ArrangementVertex>& vertices() const { return vertices_; }
  const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
  /// Bounded faces only; the unbounded outer face is not stored.
  const std::vector<Face>& faces() const { return faces_; }
  int boundary_base() const { return boundary_base_; }
  const Window& window() const { return window_; }

  std::size_t edge_count() const { return half_edges_.size() / 2; }
  /// V - E + F with the outer face counted; 2 for every valid arrangement.
  long euler_characteristic() const;

  bool is_boundary_id(int id) const { return id >= boundary_base_; }

private:
  friend Arrangement build(const LineRealization& realization);

  std::vector<ArrangementVertex> vertices_;
  std::vector<HalfEdge> half_edges_;
  std::vector<Face> faces_;
  int boundary_base_ = 0;
  Window window_;
};

/// Builds the arrangement of every line meeting the window together with the
/// four window edges. Vertex identity is combinatorial (pairs of line ids).
///
/// Throws DegenerateInputError when three lines (window edges included) pass
/// within 1e-9 of a common point or two same-family offsets are within 1e-12.
Arrangement build(const LineRealization& realization);

/// Bounded faces that do not touch the window boundary.
std::vector<Face> interior_faces(const Arrangement& arrangement);

/// CSV with header face_id,vertex_count,touches_boundary,lex_min_x,lex_min_y,area.
void write_faces_csv(std::ostream& out, const Arrangement& arrangement);

} // namespace tripoly
