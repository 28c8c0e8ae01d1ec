#include "gcba/cone_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gcba {
namespace {

struct Planar {
  double x;
  double y;
};

double cross(Planar a, Planar b) { return a.x * b.y - a.y * b.x; }

// Base angle between two non-apex points, capped at pi.
double capped_base_angle(const ConeSpace& k, const ConePoint& u, const ConePoint& v) {
  if (u.is_apex() || v.is_apex()) return 0.0;
  return distance(k.base(), u.base, v.base, true);
}

double planar_distance(double s, double t, double l) {
  const double h = std::sin(0.5 * l);
  return std::sqrt(std::max(0.0, (s - t) * (s - t) + 4.0 * s * t * h * h));
}

}  // namespace

double cone_distance(const ConeSpace& k, const ConePoint& u, const ConePoint& v) {
  const ConePoint a = k.normalize(u);
  const ConePoint b = k.normalize(v);
  return planar_distance(a.radius, b.radius, capped_base_angle(k, a, b));
}

ConeGeodesic cone_geodesic(const ConeSpace& k, const ConePoint& u, const ConePoint& v) {
  const SphericalGraph& g = k.base();
  ConeGeodesic out;
  out.from = k.normalize(u);
  out.to = k.normalize(v);
  if (out.from.is_apex() && out.to.is_apex()) throw InputError("geodesic between the apex and itself");
  const double s = out.from.radius;
  const double t = out.to.radius;
  out.base_path.start = out.from.is_apex() ? out.to.base : out.from.base;
  if (out.from.is_apex() || out.to.is_apex()) {
    out.length = s + t;
    return out;
  }
  const double d = distance(g, out.from.base, out.to.base, false);
  if (d >= kPi) {
    out.through_apex = true;
    out.base_angle = kPi;
    out.length = s + t;
    return out;
  }
  out.base_angle = d;
  out.length = planar_distance(s, t, d);
  if (d > 0.0) {
    auto paths = geodesics(g, out.from.base, out.to.base, d);
    std::erase_if(paths, [d](const GeodesicPath& p) { return p.length > d + kTau; });
    if (paths.size() != 1) throw ConsistencyError("base geodesic shorter than pi is not unique");
    out.base_path = std::move(paths.front());
  }
  const Planar pu{s, 0.0};
  const Planar pv{t * std::cos(d), t * std::sin(d)};
  const Planar w{pv.x - pu.x, pv.y - pu.y};
  const double ww = w.x * w.x + w.y * w.y;
  const double lambda = ww > 0.0 ? std::clamp(-(pu.x * w.x + pu.y * w.y) / ww, 0.0, 1.0) : 0.0;
  out.min_radius = std::hypot(pu.x + lambda * w.x, pu.y + lambda * w.y);

  double psi = 0.0;
  for (std::size_t i = 0; i + 1 < out.base_path.traversals.size(); ++i) {
    psi += out.base_path.traversals[i].length();
    const Planar ray{std::cos(psi), std::sin(psi)};
    const double denom = cross(w, ray);
    if (denom == 0.0) continue;
    const double mu = -cross(pu, ray) / denom;
    out.crossings.push_back(std::clamp(mu, 0.0, 1.0) * out.length);
  }
  return out;
}

ConePoint ConeGeodesic::at(const ConeSpace& k, double arclength) const {
  const double lam = std::clamp(arclength, 0.0, length);
  if (lam <= 0.0) return from;
  if (lam >= length) return to;
  if (through_apex) {
    if (lam < from.radius) return {from.base, from.radius - lam};
    if (lam == from.radius) return ConePoint::apex();
    return {to.base, lam - from.radius};
  }
  const double s = from.radius;
  const double t = to.radius;
  const double f = lam / length;
  const double px = s + f * (t * std::cos(base_angle) - s);
  const double py = f * t * std::sin(base_angle);
  const double r = std::hypot(px, py);
  if (r <= 0.0) return ConePoint::apex();
  const double psi = std::clamp(std::atan2(py, px), 0.0, base_angle);
  return {base_path.at(k.base(), psi), r};
}

std::vector<ConePoint> ConeGeodesic::samples(const ConeSpace& k) const {
  std::vector<ConePoint> out{from};
  for (double c : crossings) out.push_back(at(k, c));
  out.push_back(to);
  return out;
}

DirectionModel DirectionModel::of_discrete(DiscretePiSet set) {
  DirectionModel m;
  m.kind = DirectionKind::discrete_pi;
  m.discrete = std::move(set);
  return m;
}

DirectionModel DirectionModel::of_graph(const SphericalGraph& g) {
  DirectionModel m;
  m.kind = DirectionKind::base_graph;
  m.graph = g.with_metric_mode(MetricMode::pi_truncated);
  return m;
}

bool DirectionModel::contains(const GraphPoint& u) const {
  if (kind == DirectionKind::discrete_pi) return u.is_vertex() && u.vertex < discrete.size;
  return graph.contains(u);
}

double DirectionModel::angle(const GraphPoint& u, const GraphPoint& v) const {
  if (kind == DirectionKind::discrete_pi) return discrete.distance(u.vertex, v.vertex);
  return distance(graph, u, v, true);
}

double DirectionModel::antipodal(const GraphPoint& u, const GraphPoint& v) const {
  if (kind == DirectionKind::discrete_pi) return discrete.antipodal_distance(u.vertex, v.vertex);
  return antipodal_distance(graph, u, v).value;
}

DirectionModel space_of_directions(const ConeSpace& k, const ConePoint& p) {
  const ConePoint q = k.normalize(p);
  DirectionModel m;
  if (q.is_apex()) {
    m.kind = DirectionKind::base_graph;
    m.graph = k.base().with_metric_mode(MetricMode::pi_truncated);
    return m;
  }
  m.arcs = k.base().directions_at(q.base);
  const int arcs = static_cast<int>(m.arcs.size());
  m.kind = arcs == 2 ? DirectionKind::circle_2pi : DirectionKind::suspension;
  m.graph = SphericalGraph::suspension(arcs);
  return m;
}

std::vector<GraphPoint> direction_at(const ConeSpace& k, const DirectionModel& model,
                                     const ConePoint& p, const ConePoint& a) {
  const ConePoint from = k.normalize(p);
  const ConePoint to = k.normalize(a);
  if (k.same_point(from, to)) throw InputError("direction toward the point itself is undefined");
  if (from.is_apex()) return {to.base};
  const GraphPoint outward = GraphPoint::at_vertex(0);
  const GraphPoint inward = GraphPoint::at_vertex(1);
  if (to.is_apex()) return {inward};
  const SphericalGraph& g = k.base();
  const double d = distance(g, from.base, to.base, false);
  if (d >= kPi) return {inward};
  const double s = from.radius;
  const double t = to.radius;
  if (d == 0.0) return {t > s ? outward : inward};
  const double dd = planar_distance(s, t, d);
  const double alpha = std::acos(clamp_unit((s * s + dd * dd - t * t) / (2.0 * s * dd)));
  const double phi = kPi - alpha;
  const auto arcs = direction_of(g, from.base, to.base);
  if (arcs.size() != 1) throw ConsistencyError("base geodesic shorter than pi is not unique");
  if (phi <= 0.0) return {outward};
  if (phi >= kPi) return {inward};
  return {model.graph.normalize(GraphPoint::on_edge(arcs.front(), phi))};
}

std::vector<GraphPoint> direction_at(const ConeSpace& k, const ConePoint& p, const ConePoint& a) {
  return direction_at(k, space_of_directions(k, p), p, a);
}

ConePoint exp_point(const ConeSpace& k, const ConePoint& p, const DirectionModel& model,
                    const GraphPoint& dir, double dist) {
  const ConePoint q = k.normalize(p);
  if (dist <= 0.0) return q;
  if (q.is_apex()) return {k.base().normalize(dir), dist};
  const SphericalGraph& g = k.base();
  const GraphPoint u = model.graph.normalize(dir);
  const double s = q.radius;
  if (u.is_vertex() && u.vertex == 0) return {q.base, s + dist};
  if (u.is_vertex()) {
    if (dist < s) return {q.base, s - dist};
    if (dist == s) return ConePoint::apex();
    return {walk(g, q.base, model.arcs.front(), kPi).end(g), dist - s};
  }
  const double phi = u.offset;
  const double px = s + dist * std::cos(phi);
  const double py = dist * std::sin(phi);
  const double psi = std::atan2(py, px);
  const GraphPoint base = psi > 0.0 ? walk(g, q.base, model.arcs.at(static_cast<std::size_t>(u.edge)), psi).end(g) : q.base;
  return {base, std::hypot(px, py)};
}

double comparison_angle(double d_ap, double d_px, double d_ax, ComparisonModel model) {
  if (!(d_ap > 0.0) || !(d_px > 0.0)) throw InputError("comparison angle with a degenerate side");
  const double tol = 1e-9 * (1.0 + d_ap + d_px + d_ax);
  if (d_ax > d_ap + d_px + tol || d_ap > d_px + d_ax + tol || d_px > d_ap + d_ax + tol) {
    throw InputError("comparison angle: triangle inequality violated");
  }
  if (model == ComparisonModel::euclidean) {
    return std::acos(clamp_unit((d_ap * d_ap + d_px * d_px - d_ax * d_ax) / (2.0 * d_ap * d_px)));
  }
  if (d_ap > kPi + tol || d_px > kPi + tol || d_ax > kPi + tol || d_ap + d_px + d_ax > 2.0 * kPi + tol) {
    throw InputError("spherical comparison triangle needs sides <= pi and perimeter <= 2pi");
  }
  const double denom = std::sin(d_ap) * std::sin(d_px);
  if (!(denom > 0.0)) throw InputError("spherical comparison angle with a side of length pi");
  return std::acos(clamp_unit((std::cos(d_ax) - std::cos(d_ap) * std::cos(d_px)) / denom));
}

double first_variation(const DirectionModel& model, const std::vector<GraphPoint>& toward,
                       const GraphPoint& dir) {
  double best = kPi;
  for (const auto& a : toward) best = std::min(best, model.angle(a, dir));
  return -std::cos(best);
}

std::vector<ConePoint> ball_net(const ConeSpace& k, const ConePoint& p, double radius, double h) {
  if (!(radius > 0.0) || !(h > 0.0)) throw InputError("ball net needs positive radius and resolution");
  const DirectionModel model = space_of_directions(k, p);
  std::vector<ConePoint> out;
  const int rings = static_cast<int>(std::floor(radius / h + 1e-9));
  for (int j = 1; j <= rings; ++j) {
    const double rho = std::min(radius, j * h);
    for (const GraphPoint& dir : graph_net(model.graph, std::min(h / rho, kHalfPi))) {
      out.push_back(exp_point(k, p, model, dir, rho));
    }
  }
  return out;
}

ConePoint sample_ball(const ConeSpace& k, const ConePoint& p, double radius, std::mt19937_64& rng) {
  const DirectionModel model = space_of_directions(k, p);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const GraphPoint dir = random_point(model.graph, rng);
  return exp_point(k, p, model, dir, radius * std::sqrt(unit(rng)));
}

}  // namespace gcba
