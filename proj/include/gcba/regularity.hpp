#pragma once

#include <optional>
#include <vector>

#include "gcba/cone_geometry.hpp"

namespace gcba {

/// Points xi_1..xi_k of a direction model with an optional regular direction eta.
struct Collection {
  std::vector<GraphPoint> xis;
  std::optional<GraphPoint> eta;

  int k() const { return static_cast<int>(xis.size()); }
};

/// Measured noncriticality margins; the verdict is derived from the (eps, delta)
/// inputs and never replaces the margins.
struct MarginReport {
  int k = 0;
  double eps = 0.0;
  double delta = 0.0;
  double eps_margin = 0.0;    // min_i (pi/2 - ad(xi_i, eta))
  double delta_margin = 0.0;  // max_{i != j} ad(xi_i, xi_j) - pi/2; -pi/2 when k = 1
  double max_xi_xi = 0.0;     // max_{i != j} ad(xi_i, xi_j); 0 when k = 1
  double max_xi_eta = 0.0;    // max_i ad(xi_i, eta)
  bool verdict = false;       // delta_margin < delta && eps_margin > eps
  int combinations = 1;       // direction choices examined (worst case reported)
  int dimension_bound = 2;    // dim of the model + 1
  bool k_within_bound = true;
  double bound_slack = 0.0;  // smallest slack of the implied distance bounds (when verdict)
};

/// Collection check with multi-valued points: every choice is examined and the
/// worst margins are reported.
MarginReport check_direction_sets(const DirectionModel& model,
                                  const std::vector<std::vector<GraphPoint>>& xis,
                                  const std::vector<GraphPoint>& etas, double eps, double delta);

/// InputError when eta is missing.
MarginReport check_collection(const DirectionModel& model, const Collection& coll, double eps,
                              double delta);

/// Noncriticality of f = (|a_1 .|, ..., |a_k .|) at p with regular point b.
MarginReport check_map_at_point(const ConeSpace& k, const ConePoint& p,
                                const std::vector<ConePoint>& a_list, const ConePoint& b, double eps,
                                double delta);

/// Comparison-angle form over an h-net of B(p, rho) minus p.
struct RhoReport {
  double rho = 0.0;
  double h = 0.0;
  int samples = 0;
  double worst_pair_sum = 0.0;     // max of angle(a_i p x) + angle(a_j p x)
  double worst_regular_sum = 0.0;  // max of angle(a_i p x) + angle(b p x)
  double delta_slack = 0.0;        // 3pi/2 + delta - worst_pair_sum
  double eps_slack = 0.0;          // 3pi/2 - eps - worst_regular_sum
  double worst_slack = 0.0;
  bool verdict = false;
};

RhoReport check_map_rho(const ConeSpace& k, const ConePoint& p, const std::vector<ConePoint>& a_list,
                        const ConePoint& b, double eps, double delta, double rho, double h);

/// check_map_at_point at p and over an h-net of B(p, radius).
struct NeighborhoodReport {
  int samples = 0;
  int passed = 0;
  double worst_eps_margin = 0.0;
  double worst_delta_margin = 0.0;
};

NeighborhoodReport check_neighborhood(const ConeSpace& k, const ConePoint& p,
                                      const std::vector<ConePoint>& a_list, const ConePoint& b,
                                      double eps, double delta, double radius, double h);

struct RegularDirection {
  GraphPoint eta;
  double margin = 0.0;  // min_i (pi/2 - ad(xi_i, eta)); negative means none exists
};

/// Exact maximization over the PL breakpoints of the model.
RegularDirection search_regular_direction(const DirectionModel& model, const std::vector<GraphPoint>& xis);

struct FindVResult {
  GraphPoint v;
  double m1 = 0.0;  // pi/2 - |v xi_1|
  double m2 = 0.0;  // |v eta| - pi/2
  double max_level_residual = 0.0;  // max_{i >= 2} ||v xi_i| - pi/2|
  bool used_fallback = false;
};

/// A point v with |v xi_1| < pi/2, |v xi_i| = pi/2 (i >= 2) and |v eta| > pi/2.
/// InputError if the collection is not (eps, delta)-noncritical;
/// ConsistencyError if no such v is found.
FindVResult find_v(const DirectionModel& model, const Collection& coll, double eps, double delta);

enum class InductionCase { near, far };

struct InductionResult {
  DiscretePiSet sigma_x;
  std::vector<std::vector<int>> xi_dirs;
  std::vector<int> eta_dirs;
  MarginReport report;
};

/// Maps the collection to the direction space at x and checks it there.
InductionResult induction_step(const SphericalGraph& g, const Collection& coll, const GraphPoint& x,
                               InductionCase which, double eps, double delta);

struct CertificateReport {
  int samples = 0;
  int certified = 0;
  double fraction = 0.0;
  double worst_cond1 = 0.0;  // min over samples and i of (-f_i'(xi_i) - eps)
  double worst_cond2 = 0.0;  // min over samples of min_j f_j'(eta) - eps (and 1/eps - f_j')
};

/// Differential openness conditions at each sample point, solved exactly on
/// the PL direction model.
CertificateReport differential_certificate(const ConeSpace& k, const std::vector<ConePoint>& samples,
                                           const std::vector<ConePoint>& a_list, const ConePoint& b,
                                           double eps);

}  // namespace gcba
