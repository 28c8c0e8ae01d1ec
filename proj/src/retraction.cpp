#include "gcba/retraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gcba/local_solver.hpp"

namespace gcba {
namespace {

constexpr double kInsideSlack = 1e-12;
constexpr double kBisectionTolerance = 1e-10;
constexpr double kFirstOrderSlack = 1e-4;

}  // namespace

RetractionConstants default_constants(double c) {
  if (!(c > 0.0 && c <= 1.0)) throw InputError("openness constant c must lie in (0, 1]");
  return {c, 1.0 / (1.0 + 2.0 / c), 2.0 / c + 1.0};
}

double measure_speed_constant(const ConeSpace& k, const FiberSpec& spec, double h) {
  auto pts = ball_net(k, spec.p, spec.rho * spec.delta, h);
  pts.insert(pts.begin(), k.normalize(spec.p));
  double c = 1.0;
  for (const ConePoint& x : pts) {
    const DirectionModel model = space_of_directions(k, x);
    const auto bdirs = direction_at(k, model, x, spec.b);
    for (const auto& a : spec.a_list) {
      const auto adirs = direction_at(k, model, x, a);
      for (const auto& bd : bdirs) {
        for (const auto& ad : adirs) c = std::min(c, -std::cos(model.angle(ad, bd)));
      }
    }
  }
  return c;
}

Retraction::Retraction(const ConeSpace& k, FiberSpec spec, double r, std::optional<double> c, double h)
    : k_(&k), spec_(std::move(spec)), r_(r) {
  if (spec_.a_list.empty()) throw InputError("fiber spec needs at least one a_i");
  spec_.p = k.normalize(spec_.p);
  spec_.b = k.normalize(spec_.b);
  for (auto& a : spec_.a_list) a = k.normalize(a);
  if (!(r > 0.0 && r < spec_.rho * spec_.delta)) throw InputError("retraction radius must satisfy 0 < r < rho*delta");
  rho_report_ = check_map_rho(k, spec_.p, spec_.a_list, spec_.b, spec_.eps, spec_.delta, spec_.rho, h);
  if (!rho_report_.verdict) throw InputError("map is not (eps, delta, rho)-noncritical at p");
  constants_ = default_constants(c ? *c : measure_speed_constant(k, spec_, h));
  for (const auto& a : spec_.a_list) base_values_.push_back(cone_distance(k, a, spec_.p));
}

Eigen::VectorXd Retraction::f(const ConePoint& x) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(spec_.a_list.size()));
  for (std::size_t i = 0; i < spec_.a_list.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = cone_distance(*k_, spec_.a_list[i], x) - base_values_[i];
  }
  return out;
}

double Retraction::plus_margin(const ConePoint& x) const {
  const Eigen::VectorXd v = f(x);
  if (v.size() == 1) return v(0);
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      if (i != j) m = std::min(m, v(i) - constants_.s * v(j));
    }
  }
  return m;
}

PiClassification Retraction::classify(const ConePoint& x) const {
  const Eigen::VectorXd v = f(x);
  PiClassification c;
  c.s = constants_.s;
  c.plus_margin = plus_margin(x);
  c.minus_margin = v.maxCoeff();
  c.in_pi_plus = c.plus_margin >= -kInsideSlack;
  c.in_pi_minus = c.minus_margin <= kInsideSlack;
  c.residual = v.cwiseAbs().maxCoeff();
  c.on_fiber = c.residual <= kTau;
  return c;
}

R1Result Retraction::r1(const ConePoint& x) const {
  const ConePoint q = k_->normalize(x);
  if (cone_distance(*k_, spec_.p, q) > r_ * (1.0 + 1e-9)) throw InputError("r1 needs x in B(p, r)");
  if (plus_margin(q) >= -kInsideSlack) return {q, 0.0, true};
  const ConeGeodesic path = cone_geodesic(*k_, q, spec_.b);
  const int steps = std::clamp(static_cast<int>(std::ceil(path.length / (r_ / 32.0))), 64, 4096);
  double prev = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const double t = path.length * i / steps;
    if (plus_margin(path.at(*k_, t)) >= 0.0) {
      double lo = prev, hi = t;
      while (hi - lo > kBisectionTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (plus_margin(path.at(*k_, mid)) >= 0.0) hi = mid; else lo = mid;
      }
      return {path.at(*k_, hi), hi, hi <= 2.0 * r_ / constants_.c + 1e-9};
    }
    prev = t;
  }
  throw InputError("the geodesic to b never enters the super-level set; lower c");
}

R2Result Retraction::r2(const ConePoint& x) const {
  const ConePoint q = k_->normalize(x);
  const Eigen::VectorXd v = f(q);
  const std::size_t k = spec_.a_list.size();
  auto project = [&](const ConePoint& y, std::size_t i) {
    const double excess = cone_distance(*k_, spec_.a_list[i], y) - base_values_[i];
    if (excess <= 0.0) return y;
    return cone_geodesic(*k_, y, spec_.a_list[i]).at(*k_, excess);
  };
  auto feasible = [&](const ConePoint& y, double tol) { return f(y).maxCoeff() <= tol; };

  ConePoint y = q;
  if (v.maxCoeff() > 0.0) {
    std::vector<ConePoint> candidates;
    for (std::size_t i = 0; i < k; ++i) {
      const ConePoint yi = project(q, i);
      if (k == 1 || feasible(yi, kInsideSlack)) candidates.push_back(yi);
    }
    if (k >= 2) {
      ConePoint z = q;
      for (int it = 0; it < 500 && !feasible(z, 1e-13); ++it) {
        for (std::size_t i = 0; i < k; ++i) z = project(z, i);
      }
      if (feasible(z, 1e-9)) candidates.push_back(z);
      const double reach = 2.0 * cone_distance(*k_, q, spec_.p) + 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          const ConeMap pair = distance_map(*k_, {spec_.a_list[i], spec_.a_list[j]});
          Eigen::VectorXd target(2);
          target << base_values_[i], base_values_[j];
          std::vector<ConePoint> seeds{z, project(q, i), project(q, j), spec_.p};
          const SolveResult s = solve_multistart(*k_, pair, target, seeds, q, reach);
          if (s.converged && feasible(s.point, 1e-9)) candidates.push_back(s.point);
        }
      }
    }
    if (candidates.empty()) throw ConsistencyError("r2 found no point of the sub-level set");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
      const double d = cone_distance(*k_, q, c);
      if (d < best) {
        best = d;
        y = c;
      }
    }
  }
  R2Result out{y, kPi};
  const double yp = cone_distance(*k_, y, spec_.p);
  const double yx = cone_distance(*k_, y, q);
  if (yp > 1e-12 && yx > 1e-12) {
    out.first_order_angle = comparison_angle(yp, yx, cone_distance(*k_, spec_.p, q), ComparisonModel::euclidean);
    if (out.first_order_angle < kHalfPi - kFirstOrderSlack) throw ConsistencyError("r2 output fails the first-order check");
  }
  return out;
}

ConePoint Retraction::retract(const ConePoint& x) const { return r2(r1(x).point).point; }

FiberSample Retraction::sample_fiber(double radius, int n) const {
  if (spec_.a_list.size() >= 2) throw InputError("k = dim T_p: the fiber is locally a single point");
  if (!(radius > 0.0 && radius <= r_)) throw InputError("fiber sampling radius must lie in (0, r]");
  if (n < 1) throw InputError("need at least one fiber sample");
  const DirectionModel model = space_of_directions(*k_, spec_.p);
  const double total = model.graph.total_length();
  FiberSample out;
  for (int j = 0; j < n; ++j) {
    const GraphPoint dir = point_at_arclength(model.graph, total * (j + 0.5) / n);
    const double dist = radius * (1.0 - 1e-9) * (1.0 - 0.5 * (j % 3) / 3.0);
    const ConePoint y = retract(exp_point(*k_, spec_.p, model, dir, dist));
    out.max_distance = std::max(out.max_distance, cone_distance(*k_, spec_.p, y));
    out.points.push_back(y);
  }
  if (out.max_distance < radius / (2.0 * constants_.L) - 1e-12) {
    throw ConsistencyError("fiber samples collapsed onto p");
  }
  return out;
}

std::vector<TraceRow> Retraction::contract(int points, int steps) const {
  if (steps < 1) throw InputError("contraction needs at least one step");
  std::vector<ConePoint> starts{spec_.p};
  if (spec_.a_list.size() == 1) {
    for (const ConePoint& x : sample_fiber(r_, 4 * std::max(points, 1)).points) {
      if (static_cast<int>(starts.size()) > points) break;
      if (cone_distance(*k_, spec_.p, x) < r_ * (1.0 - 1e-9)) starts.push_back(x);
    }
  }
  std::vector<TraceRow> rows;
  for (std::size_t id = 0; id < starts.size(); ++id) {
    const ConePoint& x = starts[id];
    const double len = cone_distance(*k_, x, spec_.p);
    for (int j = 0; j <= steps; ++j) {
      const double t = static_cast<double>(j) / steps;
      ConePoint z = spec_.p;
      if (len > 0.0 && j < steps) z = cone_geodesic(*k_, x, spec_.p).at(*k_, t * len);
      const ConePoint y = retract(z);
      rows.push_back({static_cast<int>(id), t, y, f(y).cwiseAbs().maxCoeff(), cone_distance(*k_, spec_.p, y)});
    }
  }
  return rows;
}

void write_trace_csv(std::ostream& out, const ConeSpace& k, const std::vector<TraceRow>& rows) {
  out << "point_id,t,vertex,edge,offset,radius,residual\n";
  char buf[256];
  for (const TraceRow& row : rows) {
    int vertex = -1, edge = -1;
    double offset = 0.0;
    if (!row.point.is_apex()) {
      const auto loc = k.base().to_input(row.point.base);
      vertex = loc.is_vertex ? loc.vertex : -1;
      edge = loc.is_vertex ? -1 : loc.edge;
      offset = loc.is_vertex ? 0.0 : loc.offset;
    }
    std::snprintf(buf, sizeof buf, "%d,%.12g,%d,%d,%.17g,%.17g,%.12g\n", row.point_id, row.t, vertex, edge, offset,
                  row.point.radius, row.residual);
    out << buf;
  }
}

}  // namespace gcba
