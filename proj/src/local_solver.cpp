#include "gcba/local_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gcba {
namespace {

ConePoint clamp_to_ball(const ConeSpace& k, const ConePoint& z, const ConePoint& center, double radius) {
  const double d = cone_distance(k, center, z);
  if (d <= radius) return z;
  return cone_geodesic(k, center, z).at(k, radius);
}

Eigen::MatrixXd chart_jacobian(const ConeSpace& k, const ConeMap& f, const TangentChart& chart, double h) {
  const Eigen::Vector2d e1(h, 0.0), e2(0.0, h);
  const Eigen::VectorXd c1 = f(chart.exp(k, e1)) - f(chart.exp(k, -e1));
  const Eigen::VectorXd c2 = f(chart.exp(k, e2)) - f(chart.exp(k, -e2));
  Eigen::MatrixXd jac(c1.size(), 2);
  jac.col(0) = c1 / (2.0 * h);
  jac.col(1) = c2 / (2.0 * h);
  return jac;
}

Eigen::Vector2d min_norm_step(const Eigen::MatrixXd& jac, const Eigen::VectorXd& rhs) {
  return jac.completeOrthogonalDecomposition().solve(rhs);
}

}  // namespace

ConeMap distance_map(const ConeSpace& k, std::vector<ConePoint> a_list) {
  return [&k, a = std::move(a_list)](const ConePoint& y) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out(static_cast<Eigen::Index>(i)) = cone_distance(k, a[i], y);
    return out;
  };
}

ConePoint TangentChart::exp(const ConeSpace& k, const Eigen::Vector2d& v) const {
  const double r = v.norm();
  if (r == 0.0) return at;
  const double phi = std::atan2(std::abs(v.y()), v.x());
  GraphPoint dir;
  if (phi <= 0.0) {
    dir = GraphPoint::at_vertex(0);
  } else if (phi >= kPi) {
    dir = GraphPoint::at_vertex(1);
  } else {
    dir = model.graph.normalize(GraphPoint::on_edge(v.y() >= 0.0 ? upper : lower, phi));
  }
  return exp_point(k, at, model, dir, r);
}

std::vector<TangentChart> charts_at(const ConeSpace& k, const ConePoint& y) {
  const ConePoint q = k.normalize(y);
  if (q.is_apex()) return {};
  const DirectionModel model = space_of_directions(k, q);
  const int m = static_cast<int>(model.arcs.size());
  std::vector<TangentChart> out;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) out.push_back({q, model, i, j});
  }
  return out;
}

SolveResult solve_preimage(const ConeSpace& k, const ConeMap& f, const Eigen::VectorXd& target,
                           const ConePoint& seed, const ConePoint& center, double radius,
                           const SolveOptions& opt) {
  SolveResult out;
  ConePoint y = clamp_to_ball(k, k.normalize(seed), center, radius);
  Eigen::VectorXd value = f(y);
  double res = (value - target).norm();
  for (out.iterations = 0; out.iterations < opt.max_iterations; ++out.iterations) {
    if (res <= opt.tolerance) break;
    ConePoint next = y;
    double next_res = res;
    if (y.is_apex()) {
      for (const GraphPoint& dir : graph_net(k.base(), 0.05)) {
        for (double t : {res, 0.25 * res}) {
          const ConePoint z = clamp_to_ball(k, {dir, t}, center, radius);
          const double rz = (f(z) - target).norm();
          if (rz < next_res) {
            next = z;
            next_res = rz;
          }
        }
      }
    } else {
      for (const TangentChart& chart : charts_at(k, y)) {
        const Eigen::MatrixXd jac = chart_jacobian(k, f, chart, opt.fd_step);
        Eigen::Vector2d step = min_norm_step(jac, target - value);
        if (!step.allFinite()) continue;
        if (step.norm() > radius) step *= radius / step.norm();
        double alpha = 1.0;
        for (int halving = 0; halving < 40; ++halving, alpha *= 0.5) {
          const ConePoint z = clamp_to_ball(k, chart.exp(k, alpha * step), center, radius);
          const double rz = (f(z) - target).norm();
          if (rz < res) {
            if (rz < next_res) {
              next = z;
              next_res = rz;
            }
            break;
          }
        }
      }
    }
    if (!(next_res < res)) break;
    y = next;
    value = f(y);
    res = next_res;
  }
  out.point = y;
  out.residual = res;
  out.converged = res <= opt.tolerance;
  return out;
}

SolveResult solve_multistart(const ConeSpace& k, const ConeMap& f, const Eigen::VectorXd& target,
                             const std::vector<ConePoint>& seeds, const ConePoint& center, double radius,
                             const SolveOptions& opt) {
  SolveResult best;
  best.residual = std::numeric_limits<double>::infinity();
  for (const ConePoint& s : seeds) {
    SolveResult r = solve_preimage(k, f, target, s, center, radius, opt);
    if (r.converged) return r;
    if (r.residual < best.residual) best = r;
  }
  return best;
}

std::vector<ConePoint> default_seeds(const ConeSpace& k, const ConeMap& f, const Eigen::VectorXd& target,
                                     const ConePoint& x, double radius, double fd_step) {
  const ConePoint q = k.normalize(x);
  std::vector<ConePoint> seeds;
  const auto charts = charts_at(k, q);
  if (charts.empty()) {
    seeds.push_back(q);
    const double total = k.base().total_length();
    for (int j = 0; j < 6; ++j) seeds.push_back({point_at_arclength(k.base(), total * j / 6.0), 0.5 * radius});
    seeds.push_back({point_at_arclength(k.base(), total / 12.0), 0.25 * radius});
    return seeds;
  }
  const TangentChart& chart = charts.front();
  Eigen::Vector2d step = min_norm_step(chart_jacobian(k, f, chart, fd_step), target - f(q));
  if (step.allFinite()) {
    if (step.norm() > radius) step *= radius / step.norm();
    seeds.push_back(chart.exp(k, step));
  }
  seeds.push_back(q);
  for (int j = 0; j < 6; ++j) {
    const double ang = 2.0 * kPi * j / 6.0;
    seeds.push_back(chart.exp(k, 0.5 * radius * Eigen::Vector2d(std::cos(ang), std::sin(ang))));
  }
  return seeds;
}

}  // namespace gcba
