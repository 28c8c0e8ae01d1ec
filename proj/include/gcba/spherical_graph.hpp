#pragma once

#include <limits>
#include <span>
#include <vector>

#include "gcba/common.hpp"

namespace gcba {

/// A location on a spherical graph: a vertex, or a point strictly inside an
/// (internal) edge. Offsets are measured from the edge's `a` endpoint.
struct GraphPoint {
  int vertex = -1;
  int edge = -1;
  double offset = 0.0;

  static GraphPoint at_vertex(int v) { return {v, -1, 0.0}; }
  static GraphPoint on_edge(int e, double t) { return {-1, e, t}; }
  bool is_vertex() const { return vertex >= 0; }

  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
};

/// Lexicographic (edge id, offset) order; vertices sort before edge points.
bool locus_less(const GraphPoint& x, const GraphPoint& y);

struct Edge {
  int a = 0;
  int b = 0;
  double length = 0.0;
  int input_edge = 0;         // edge of the user description this piece came from
  double input_offset = 0.0;  // where the piece starts on that edge
};

/// An edge traversed in a given sense; `forward` runs from `a` to `b`.
struct HalfEdge {
  int edge = 0;
  bool forward = true;
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

enum class MetricMode { intrinsic, pi_truncated };

/// Finite metric graph used as a compact CAT(1) model.
///
/// Edges longer than pi are split at construction into equal pieces of length
/// at most pi, so the distance from any source restricted to an edge is the
/// lower envelope of two affine functions. The description's vertices keep
/// ids 0..n-1; subdivision vertices are appended after them. Immutable.
class SphericalGraph {
 public:
  struct InputEdge {
    int a = 0;
    int b = 0;
    double length = 0.0;
  };

  /// Edge endpoints index into 0..num_vertices-1. Lengths must be positive
  /// and finite (InputError otherwise); the CAT(1) invariants are checked by
  /// validate_space, not here.
  static SphericalGraph from_edges(int num_vertices, std::vector<InputEdge> edges,
                                   MetricMode mode = MetricMode::pi_truncated);
  static SphericalGraph circle(double length, MetricMode mode = MetricMode::pi_truncated);
  /// Two poles (vertices 0 and 1) joined by `arcs` arcs of length pi.
  static SphericalGraph suspension(int arcs, MetricMode mode = MetricMode::pi_truncated);

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }
  int num_input_vertices() const { return num_input_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const InputEdge> input_edges() const { return input_edges_; }
  /// Half-edges leaving `v`, ordered by (edge id, forward first).
  std::span<const HalfEdge> half_edges(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(half_edges(v).size()); }
  MetricMode metric_mode() const { return mode_; }
  SphericalGraph with_metric_mode(MetricMode mode) const;
  double total_length() const;
  /// Circle descriptions report their length; NaN otherwise.
  double circle_length() const { return circle_length_; }

  int tail(HalfEdge h) const { return h.forward ? edge(h.edge).a : edge(h.edge).b; }
  int head(HalfEdge h) const { return h.forward ? edge(h.edge).b : edge(h.edge).a; }

  /// Intrinsic distance between vertices (cached all-pairs table).
  double vertex_distance(int u, int v) const {
    return vertex_dist_[static_cast<std::size_t>(u) * adjacency_.size() + static_cast<std::size_t>(v)];
  }

  /// Endpoint offsets collapse to the vertex. Throws InputError for points
  /// that do not lie on the graph.
  GraphPoint normalize(GraphPoint x) const;
  bool contains(const GraphPoint& x) const;

  /// Point at `offset` along edge `input_edge` of the description.
  GraphPoint from_input(int input_edge, double offset) const;
  struct InputLocus {
    bool is_vertex = false;
    int vertex = -1;
    int edge = -1;
    double offset = 0.0;
  };
  /// Inverse of from_input; description vertices come back as vertices.
  InputLocus to_input(const GraphPoint& x) const;

  /// Graph directions at x: two for an edge point (backward, forward),
  /// `degree` for a vertex.
  std::vector<HalfEdge> directions_at(const GraphPoint& x) const;

 private:
  int num_input_vertices_ = 0;
  std::vector<InputEdge> input_edges_;
  std::vector<std::vector<int>> pieces_;  // internal edges per input edge
  std::vector<Edge> edges_;
  std::vector<std::vector<HalfEdge>> adjacency_;
  std::vector<double> vertex_dist_;
  MetricMode mode_ = MetricMode::pi_truncated;
  double circle_length_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace gcba
