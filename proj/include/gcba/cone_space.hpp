#pragma once

#include <cmath>
#include <limits>

#include "gcba/spherical_graph.hpp"

namespace gcba {

/// A point of a Euclidean cone: a base point at some radius. Every point of
/// radius 0 is the apex, whatever its base point.
struct ConePoint {
  GraphPoint base;
  double radius = 0.0;

  static ConePoint apex() { return {GraphPoint::at_vertex(0), 0.0}; }
  bool is_apex() const { return radius <= 0.0; }
};

/// Euclidean cone over a spherical graph (a CAT(0) space when the base is
/// CAT(1)). Immutable.
class ConeSpace {
 public:
  explicit ConeSpace(SphericalGraph base);

  const SphericalGraph& base() const { return base_; }
  /// theta with base length 2*pi + theta when the base is a circle; NaN otherwise.
  double theta_excess() const { return theta_excess_; }

  /// Canonical representative: normalized base point, apex collapsed.
  ConePoint normalize(const ConePoint& p) const;
  bool same_point(const ConePoint& p, const ConePoint& q) const;

 private:
  SphericalGraph base_;
  double theta_excess_ = std::numeric_limits<double>::quiet_NaN();
};

/// Ball whose 10x concentric ball is compact CAT(0). In a cone the compactness
/// clause holds globally, so only radius < 1 is checked.
struct TinyBallSpec {
  ConePoint center;
  double radius = 0.0;

  /// Throws InputError unless 0 < radius < 1.
  void check() const;
};

}  // namespace gcba
