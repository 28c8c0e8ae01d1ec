#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gcba/cone_space.hpp"
#include "gcba/spherical_graph.hpp"

namespace gcba::testing {

/// Cone over circle(2pi) read as the Euclidean plane: base offset = polar angle.
struct Plane {
  ConeSpace k{SphericalGraph::circle(2.0 * kPi)};

  ConePoint at(double x, double y) const;
  ConePoint polar(double angle, double radius) const;
  Eigen::Vector2d xy(const ConePoint& p) const;
};

/// Antipodal distance on the circle of length 2pi + theta, d the circular
/// distance between the two points.
double circle_antipodal(double theta, double d);

/// max over a dense net of dbar(xi, x) + dbar(eta, x) - pi.
double sampled_antipodal(const SphericalGraph& g, const GraphPoint& xi, const GraphPoint& eta, double spacing);

/// Length of the shortest simple cycle, by enumerating every simple cycle.
double brute_girth(const SphericalGraph& g);

/// Connected graph with min degree >= 2 and girth >= 2pi: a Hamiltonian cycle
/// plus random chords, lengths rescaled until the girth condition holds.
SphericalGraph random_spherical_graph(std::mt19937_64& rng, int vertices, int chords);

/// Closed-form planar retraction for f = |a .| - |a p|, p the origin, b on the
/// far side: first move toward b until |a .| >= |a p|, then project onto the
/// circle. Returns the point and the travel toward b.
struct PlaneRetraction {
  Eigen::Vector2d point;
  double travel = 0.0;
};
PlaneRetraction plane_retract(const Eigen::Vector2d& x, const Eigen::Vector2d& a, const Eigen::Vector2d& b);

GraphPoint random_graph_point(const SphericalGraph& g, std::mt19937_64& rng);

}  // namespace gcba::testing

#include <optional>

#include "gcba/regularity.hpp"

namespace gcba::testing {

/// Random k-point collection on g with eta from the exact search, returned
/// only when it is (eps, delta)-noncritical.
std::optional<Collection> random_noncritical(const SphericalGraph& g, std::mt19937_64& rng, int k, double eps,
                                             double delta);

}  // namespace gcba::testing
