#pragma once

#include <random>
#include <vector>

#include "gcba/cone_space.hpp"
#include "gcba/geodesy.hpp"

namespace gcba {

/// sqrt(s^2 + t^2 - 2st cos l) with l the base distance capped at pi.
double cone_distance(const ConeSpace& k, const ConePoint& u, const ConePoint& v);

/// The unique shortest path between two cone points.
///
/// Unless it runs through the apex, the path is the straight chord in the
/// planar development U = (s, 0), V = (t cos l, t sin l) of the sectors
/// swept by the base geodesic.
struct ConeGeodesic {
  ConePoint from;
  ConePoint to;
  double length = 0.0;
  bool through_apex = false;
  double min_radius = 0.0;
  double base_angle = 0.0;   // l
  GeodesicPath base_path;    // base geodesic, used when l in (0, pi)
  std::vector<double> crossings;  // arclength parameters where a vertex ray is crossed

  ConePoint at(const ConeSpace& k, double arclength) const;
  /// Endpoints and ray crossings, in order along the path.
  std::vector<ConePoint> samples(const ConeSpace& k) const;
};

ConeGeodesic cone_geodesic(const ConeSpace& k, const ConePoint& u, const ConePoint& v);

enum class DirectionKind { base_graph, circle_2pi, suspension, discrete_pi };

/// Space of directions, realized as a spherical graph (or a discrete set).
///
/// At a non-apex point over x the model is suspension(m), m = number of graph
/// directions at x: vertex 0 is the outward radial direction, vertex 1 the
/// inward one, and the point at offset phi on arc j makes polar angle phi with
/// the outward direction on the side of graph direction arcs[j].
struct DirectionModel {
  DirectionKind kind = DirectionKind::base_graph;
  SphericalGraph graph;
  std::vector<HalfEdge> arcs;
  DiscretePiSet discrete;

  static DirectionModel of_discrete(DiscretePiSet set);
  /// A spherical graph used directly as a direction space (pi-truncated).
  static DirectionModel of_graph(const SphericalGraph& g);
  int dimension() const { return kind == DirectionKind::discrete_pi ? 0 : 1; }
  /// Angle metric (pi-truncated).
  double angle(const GraphPoint& u, const GraphPoint& v) const;
  double antipodal(const GraphPoint& u, const GraphPoint& v) const;
  /// Points of the model: graph points, or at_vertex(i) for discrete sets.
  bool contains(const GraphPoint& u) const;
};

DirectionModel space_of_directions(const ConeSpace& k, const ConePoint& p);

/// Initial directions at p of the shortest path(s) p -> a. InputError if p == a.
std::vector<GraphPoint> direction_at(const ConeSpace& k, const DirectionModel& model,
                                     const ConePoint& p, const ConePoint& a);
std::vector<GraphPoint> direction_at(const ConeSpace& k, const ConePoint& p, const ConePoint& a);

/// Endpoint of the cone geodesic leaving p in direction `dir` with length `dist`.
ConePoint exp_point(const ConeSpace& k, const ConePoint& p, const DirectionModel& model,
                    const GraphPoint& dir, double dist);

enum class ComparisonModel { euclidean, spherical };

/// Angle at p of the comparison triangle with sides |ap|, |px|, |ax|.
double comparison_angle(double d_ap, double d_px, double d_ax, ComparisonModel model);

/// Derivative of |a.| in direction `dir` by the first variation formula:
/// -cos of the smallest angle between dir and the directions toward a.
double first_variation(const DirectionModel& model, const std::vector<GraphPoint>& toward,
                        const GraphPoint& dir);

/// Deterministic net of B(p, radius) minus p: rings at multiples of h, each
/// sampled with arc spacing about h.
std::vector<ConePoint> ball_net(const ConeSpace& k, const ConePoint& p, double radius, double h);

/// Random point of B(p, radius), area-weighted in the polar parametrization.
ConePoint sample_ball(const ConeSpace& k, const ConePoint& p, double radius, std::mt19937_64& rng);

}  // namespace gcba
