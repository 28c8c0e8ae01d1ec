#pragma once

#include <random>
#include <vector>

#include "gcba/pl_function.hpp"
#include "gcba/spherical_graph.hpp"

namespace gcba {

/// Exact single-source distances on a spherical graph. Holds a reference to
/// the graph, which must outlive the field.
class DistanceField {
 public:
  DistanceField(const SphericalGraph& graph, GraphPoint source);

  const GraphPoint& source() const { return source_; }
  double to_vertex(int v) const { return dist_[static_cast<std::size_t>(v)]; }
  /// Intrinsic (untruncated) distance to x.
  double to(const GraphPoint& x) const;
  /// The distance restricted to edge `e`, as a function of the offset.
  PLFunction profile(int e) const;

 private:
  const SphericalGraph* graph_;
  GraphPoint source_;
  std::vector<double> dist_;
};

double distance(const SphericalGraph& g, const GraphPoint& x, const GraphPoint& y,
                bool truncated);

/// Piece of a path along one edge, from offset `from` to offset `to`.
struct Traversal {
  int edge = 0;
  double from = 0.0;
  double to = 0.0;
  double length() const { return to > from ? to - from : from - to; }
  bool forward() const { return to >= from; }
};

/// Locally shortest path (no backtracking) in a spherical graph.
struct GeodesicPath {
  GraphPoint start;
  std::vector<Traversal> traversals;
  double length = 0.0;

  GraphPoint end(const SphericalGraph& g) const;
  /// Point at arclength s from the start, clamped to [0, length].
  GraphPoint at(const SphericalGraph& g, double s) const;
  /// First half-edge used; the path must have positive length.
  HalfEdge initial_direction(const SphericalGraph& g) const;
};

/// Every locally shortest path from x to y of length <= max_len (+tau),
/// sorted by length, then lexicographically by traversed (edge, offset).
std::vector<GeodesicPath> geodesics(const SphericalGraph& g, const GraphPoint& x,
                                    const GraphPoint& y, double max_len);

/// Continues `path` beyond its end by `extra` radians. At branch points the
/// lowest edge id wins (forward before backward on loops).
GeodesicPath extend(const SphericalGraph& g, const GeodesicPath& path, double extra);

/// Walks `length` from x leaving along `dir`, branching as in extend().
GeodesicPath walk(const SphericalGraph& g, const GraphPoint& x, HalfEdge dir, double length);

struct AntipodeSegment {
  int edge = 0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Points at intrinsic distance >= pi from a source: closed subsegments of
/// edges plus isolated points.
struct AntipodeSet {
  std::vector<AntipodeSegment> segments;
  std::vector<GraphPoint> points;

  bool empty() const { return segments.empty() && points.empty(); }
  /// Segment endpoints and isolated points, in that order.
  std::vector<GraphPoint> representatives(const SphericalGraph& g) const;
};

AntipodeSet antipode_set(const SphericalGraph& g, const GraphPoint& xi);

struct AntipodalDistance {
  double value = 0.0;       // max over antipodes of xi of the truncated distance to eta
  double via_sup = 0.0;     // max over x of |xi x| + |eta x| - pi
  double method_gap = 0.0;  // |value - via_sup|
};

/// Both formulas, evaluated exactly on the PL structure. Requires the
/// pi-truncated metric (InputError otherwise); throws ConsistencyError if
/// the two formulas disagree by more than 1e-6.
AntipodalDistance antipodal_distance(const SphericalGraph& g, const GraphPoint& xi,
                                     const GraphPoint& eta);

/// eta -> antipodal distance(xi, eta) restricted to edge `e`, exact PL.
PLFunction antipodal_profile(const SphericalGraph& g, const AntipodeSet& ant, int e);

/// Zero-dimensional direction space: `size` points at pairwise distance pi.
struct DiscretePiSet {
  int size = 0;
  std::vector<HalfEdge> directions;  // graph direction each point stands for

  double distance(int i, int j) const { return i == j ? 0.0 : kPi; }
  double antipodal_distance(int i, int j) const { return (i == j || size >= 3) ? kPi : 0.0; }
};

/// Directions at x in the graph: 2 at edge points, degree at vertices.
DiscretePiSet direction_space_graph(const SphericalGraph& g, const GraphPoint& x);

/// Indices (into direction_space_graph(g, x)) of the initial directions of
/// all shortest paths x -> target. InputError when x == target.
std::vector<int> direction_of(const SphericalGraph& g, const GraphPoint& x,
                              const GraphPoint& target);

/// All vertices plus interior points splitting every edge into pieces of
/// length <= spacing.
std::vector<GraphPoint> graph_net(const SphericalGraph& g, double spacing);

/// Point at arclength s in the concatenation of the edges (edge id order).
GraphPoint point_at_arclength(const SphericalGraph& g, double s);

/// Uniform point with respect to arclength.
GraphPoint random_point(const SphericalGraph& g, std::mt19937_64& rng);

}  // namespace gcba
