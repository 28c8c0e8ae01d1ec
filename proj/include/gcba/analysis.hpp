#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "gcba/retraction.hpp"

namespace gcba {

struct OpennessOptions {
  int samples = 6;            // points x of B(p, r_max) per radius, p included
  int bisection_targets = 8;  // targets per circle during the bisection
  int bisection_steps = 10;
  int verify_targets = 1000;  // total targets at c_emp / 2
  int pairs = 10000;          // bi-Lipschitz / injectivity pairs when k = dim
  std::uint64_t seed = 1;
};

struct OpennessReport {
  std::vector<double> radii;
  int samples = 0;
  double c_emp = 0.0;         // largest passing c found by bisection
  double verify_c = 0.0;      // c_emp / 2
  int targets_checked = 0;
  int inclusion_failures = 0;
  double max_residual = 0.0;  // over verified preimages
  bool k_equals_dim = false;
  int pairs = 0;
  double bilip_min = 0.0;     // min |f(x) - f(y)| / |xy|
  double bilip_max = 0.0;
  bool injective = true;
};

/// Empirical openness of f = (|a_i .|) near p: for x sampled in B(p, r_max)
/// and every radius r, targets on the sphere of radius c*r about f(x) must
/// have a preimage in the closed ball B(x, r). InputError unless f is
/// (eps, delta)-noncritical at p.
OpennessReport openness_estimate(const ConeSpace& k, const ConePoint& p, const std::vector<ConePoint>& a_list,
                                 const ConePoint& b, double eps, double delta, const std::vector<double>& radii,
                                 const OpennessOptions& opt = {});

struct FiberSphereRow {
  double r = 0.0;
  int points = 0;              // fiber points found at distance r from p
  ConePoint witness;           // the point with the largest delta margin
  double delta_margin = 0.0;   // max over the points
  double eps_margin = 0.0;     // min over the points of the best regular margin
  bool verdict = false;
};

/// Noncriticality of (f, |p .|) on the fiber sphere S(p, r) for each r. The
/// fiber points come from retracting a net and refining with the solver.
/// InputError when k >= dim T_p or no fiber point lies at distance r.
std::vector<FiberSphereRow> fiber_sphere_check(const ConeSpace& k, const FiberSpec& spec,
                                               const std::vector<double>& radii, double h = 0.05);

struct SweepRow {
  double theta = 0.0;
  int k = 1;
  double best_margin = 0.0;  // -inf when no configuration is admissible
  GraphPoint xi1;
  GraphPoint xi2;            // k = 2 only
  GraphPoint eta;
};

/// Best joint noncriticality margin over configurations on the circle of
/// length 2*pi + theta, xi_1 fixed at offset 0. For k = 2 the pair condition
/// ad(xi_1, xi_2) <= pi/2 is imposed and the regular margin is maximized.
std::vector<SweepRow> example14_sweep(const std::vector<double>& thetas, int k);

/// theta_min, theta_min + step, ... up to theta_max (inclusive within 1e-9).
std::vector<double> theta_grid(double theta_min, double theta_max, double step);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct SphereMapRow {
  double x = 0.0;  // arclength on the circle
  double f1 = 0.0;
  double f2 = 0.0;
  double local_distortion = 1.0;
};

struct SphereMapResult {
  MarginReport hypotheses;
  std::vector<SphereMapRow> table;
  double lip = 0.0;         // max |f x - f y| / chord(x, y)
  double lip_inverse = 0.0; // max chord(x, y) / |f x - f y|
  double distortion = 0.0;  // lip * lip_inverse
  int winding = 0;
  bool monotone = false;    // all angle increments share a sign
  bool bijective = false;
  double density = 0.0;     // max_x min d(x, {xi_1, xi_2, eta})
  double density_slack = 0.0;  // density - pi/2
};

/// f~(x) = (-cos d(xi_1, x), -cos d(xi_2, x)) / |.| on a circle direction
/// space. InputError when the space is not a circle or the hypotheses fail.
SphereMapResult sphere_map(const SphericalGraph& circle, const std::vector<GraphPoint>& xis,
                           const GraphPoint& eta, double eps, double delta, double resolution = 1e-3);

void write_sphere_map_csv(std::ostream& out, const SphereMapResult& result);

}  // namespace gcba
