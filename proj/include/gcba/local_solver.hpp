#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gcba/cone_geometry.hpp"

namespace gcba {

/// A map from the cone to R^k, evaluated pointwise.
using ConeMap = std::function<Eigen::VectorXd(const ConePoint&)>;

/// (|a_1 .|, ..., |a_k .|).
ConeMap distance_map(const ConeSpace& k, std::vector<ConePoint> a_list);

/// Tangent-plane chart at a non-apex point y: planar vectors v with v2 >= 0
/// go into arc `upper`, v2 < 0 into arc `lower`, v1 > 0 is outward radial.
struct TangentChart {
  ConePoint at;
  DirectionModel model;
  int lower = 0;
  int upper = 1;

  ConePoint exp(const ConeSpace& k, const Eigen::Vector2d& v) const;
};

/// Charts at y, one per ordered pair of arcs (a single chart on a circle).
std::vector<TangentChart> charts_at(const ConeSpace& k, const ConePoint& y);

struct SolveOptions {
  int max_iterations = 80;
  double tolerance = 1e-11;
  double fd_step = 1e-7;
};

struct SolveResult {
  ConePoint point;
  double residual = 0.0;  // |F(point) - target|
  bool converged = false;
  int iterations = 0;
};

/// Damped Gauss-Newton for F(y) = target with y kept in the closed ball
/// B(center, radius); finite-difference Jacobians in tangent charts.
SolveResult solve_preimage(const ConeSpace& k, const ConeMap& f, const Eigen::VectorXd& target,
                           const ConePoint& seed, const ConePoint& center, double radius,
                           const SolveOptions& opt = {});

/// Tries the seeds in order; returns the first converged solve, else the one
/// with the smallest residual.
SolveResult solve_multistart(const ConeSpace& k, const ConeMap& f, const Eigen::VectorXd& target,
                             const std::vector<ConePoint>& seeds, const ConePoint& center, double radius,
                             const SolveOptions& opt = {});

/// Linearized guess at x, x itself, and six points on the ring of radius
/// radius/2 around x: eight seeds.
std::vector<ConePoint> default_seeds(const ConeSpace& k, const ConeMap& f, const Eigen::VectorXd& target,
                                     const ConePoint& x, double radius, double fd_step = 1e-7);

}  // namespace gcba
