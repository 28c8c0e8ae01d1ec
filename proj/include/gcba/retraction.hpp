#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "gcba/regularity.hpp"

namespace gcba {

/// f = (|a_1 .|, ..., |a_k .|) near p, with regular point b and the
/// (eps, delta, rho) constants of the comparison-angle definition.
struct FiberSpec {
  ConePoint p;
  std::vector<ConePoint> a_list;
  ConePoint b;
  double eps = 0.0;
  double delta = 0.0;
  double rho = 0.0;
};

struct RetractionConstants {
  double c = 0.0;
  double s = 0.0;  // (1 + 2/c)^-1
  double L = 0.0;  // 2/c + 1
};

/// InputError unless 0 < c <= 1.
RetractionConstants default_constants(double c);

/// min over {p} and an h-net of B(p, rho*delta) of min_i -cos angle(a_i', b'),
/// the speed at which every f_i grows toward b; capped at 1.
double measure_speed_constant(const ConeSpace& k, const FiberSpec& spec, double h);

struct PiClassification {
  double s = 0.0;
  double plus_margin = 0.0;   // min_{i != j} (f_i - s f_j); f_1 when k = 1
  double minus_margin = 0.0;  // max_i f_i
  bool in_pi_plus = false;
  bool in_pi_minus = false;
  double residual = 0.0;      // max_i |f_i|
  bool on_fiber = false;
};

struct R1Result {
  ConePoint point;
  double travel = 0.0;
  bool within_bound = true;  // travel <= 2r/c
};

struct R2Result {
  ConePoint point;
  double first_order_angle = kPi;  // comparison angle at y between p and x
};

struct FiberSample {
  std::vector<ConePoint> points;
  double max_distance = 0.0;  // from p
};

struct TraceRow {
  int point_id = 0;
  double t = 0.0;
  ConePoint point;
  double residual = 0.0;
  double distance_to_p = 0.0;
};

/// The retraction R = R2 o R1 of B(p, r) onto the fiber of f through p, with
/// f_i = |a_i .| - |a_i p|. Holds a reference to the cone.
class Retraction {
 public:
  /// Checks r < rho * delta, |a_i p| > rho, |b p| > rho and the
  /// comparison-angle noncriticality on an h-net. `c` defaults to
  /// measure_speed_constant(h).
  Retraction(const ConeSpace& k, FiberSpec spec, double r, std::optional<double> c = std::nullopt,
             double h = 0.05);

  const FiberSpec& spec() const { return spec_; }
  const RetractionConstants& constants() const { return constants_; }
  double radius() const { return r_; }
  const RhoReport& rho_report() const { return rho_report_; }

  Eigen::VectorXd f(const ConePoint& x) const;
  PiClassification classify(const ConePoint& x) const;
  double plus_margin(const ConePoint& x) const;

  R1Result r1(const ConePoint& x) const;
  R2Result r2(const ConePoint& x) const;
  ConePoint retract(const ConePoint& x) const;

  /// Retracts a deterministic net of B(p, radius); needs k < dim T_p = 2.
  FiberSample sample_fiber(double radius, int n) const;

  /// Fiber points x in B(p, r) pushed to p: rows retract(geodesic x -> p at t).
  std::vector<TraceRow> contract(int points, int steps) const;

 private:
  const ConeSpace* k_;
  FiberSpec spec_;
  double r_;
  RetractionConstants constants_;
  RhoReport rho_report_;
  std::vector<double> base_values_;
};

/// CSV with header point_id,t,vertex,edge,offset,radius,residual.
void write_trace_csv(std::ostream& out, const ConeSpace& k, const std::vector<TraceRow>& rows);

}  // namespace gcba
