#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gcba/geodesy.hpp"
#include "gcba/validation.hpp"

namespace gcba::testing {

ConePoint Plane::at(double x, double y) const {
  const double r = std::hypot(x, y);
  if (r == 0.0) return ConePoint::apex();
  double angle = std::atan2(y, x);
  if (angle < 0.0) angle += 2.0 * kPi;
  return polar(angle, r);
}

ConePoint Plane::polar(double angle, double radius) const {
  angle = std::fmod(angle, 2.0 * kPi);
  if (angle < 0.0) angle += 2.0 * kPi;
  return k.normalize({k.base().from_input(0, angle), radius});
}

Eigen::Vector2d Plane::xy(const ConePoint& p) const {
  if (p.is_apex()) return Eigen::Vector2d::Zero();
  const auto loc = k.base().to_input(p.base);
  const double angle = loc.is_vertex ? 0.0 : loc.offset;
  return {p.radius * std::cos(angle), p.radius * std::sin(angle)};
}

double circle_antipodal(double theta, double d) { return std::min(kPi, kPi + theta - d); }

double sampled_antipodal(const SphericalGraph& g, const GraphPoint& xi, const GraphPoint& eta, double spacing) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& x : graph_net(g, spacing)) {
    best = std::max(best, distance(g, xi, x, true) + distance(g, eta, x, true) - kPi);
  }
  return best;
}

double brute_girth(const SphericalGraph& g) {
  // Cycles are enumerated from their smallest vertex; multi-edges and loops
  // are handled by tracking edge ids.
  double best = std::numeric_limits<double>::infinity();
  const int n = g.num_vertices();
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  std::function<void(int, int, int, double)> dfs = [&](int start, int v, int via, double len) {
    for (const HalfEdge& h : g.half_edges(v)) {
      if (h.edge == via) continue;
      const int w = g.head(h);
      const double next = len + g.edge(h.edge).length;
      if (next >= best) continue;
      if (w == start) {
        best = next;
      } else if (w > start && !on_path[static_cast<std::size_t>(w)]) {
        on_path[static_cast<std::size_t>(w)] = true;
        dfs(start, w, h.edge, next);
        on_path[static_cast<std::size_t>(w)] = false;
      }
    }
  };
  for (int s = 0; s < n; ++s) {
    on_path[static_cast<std::size_t>(s)] = true;
    dfs(s, s, -1, 0.0);
    on_path[static_cast<std::size_t>(s)] = false;
  }
  return best;
}

SphericalGraph random_spherical_graph(std::mt19937_64& rng, int vertices, int chords) {
  std::uniform_real_distribution<double> len(0.5, 2.0);
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  std::vector<SphericalGraph::InputEdge> edges;
  for (int i = 0; i < vertices; ++i) edges.push_back({i, (i + 1) % vertices, len(rng)});
  for (int c = 0; c < chords; ++c) {
    int a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    edges.push_back({a, b, len(rng)});
  }
  SphericalGraph g = SphericalGraph::from_edges(vertices, edges);
  const double gir = girth(g);
  if (gir < 2.0 * kPi) {
    const double scale = 2.0 * kPi / gir * 1.05;
    for (auto& e : edges) e.length *= scale;
    g = SphericalGraph::from_edges(vertices, edges);
  }
  return g;
}

PlaneRetraction plane_retract(const Eigen::Vector2d& x, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double radius = a.norm();
  PlaneRetraction out{x, 0.0};
  if ((x - a).norm() < radius) {
    // |x + t u - a| = radius, u the unit vector toward b.
    const Eigen::Vector2d u = (b - x).normalized();
    const Eigen::Vector2d w = x - a;
    const double bq = w.dot(u);
    const double c = w.squaredNorm() - radius * radius;
    out.travel = -bq + std::sqrt(bq * bq - c);
    out.point = x + out.travel * u;
  }
  const double d = (out.point - a).norm();
  if (d > radius) out.point = a + (out.point - a) * (radius / d);
  return out;
}

GraphPoint random_graph_point(const SphericalGraph& g, std::mt19937_64& rng) { return random_point(g, rng); }

}  // namespace gcba::testing

namespace gcba::testing {

std::optional<Collection> random_noncritical(const SphericalGraph& g, std::mt19937_64& rng, int k, double eps,
                                             double delta) {
  const DirectionModel model = DirectionModel::of_graph(g);
  Collection coll;
  for (int i = 0; i < k; ++i) coll.xis.push_back(random_point(g, rng));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (distance(g, coll.xis[static_cast<std::size_t>(i)], coll.xis[static_cast<std::size_t>(j)], true) < 1e-6) {
        return std::nullopt;
      }
    }
  }
  coll.eta = search_regular_direction(model, coll.xis).eta;
  if (!check_collection(model, coll, eps, delta).verdict) return std::nullopt;
  return coll;
}

}  // namespace gcba::testing
