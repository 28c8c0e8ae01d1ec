#include "gcba/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

#include "gcba/cone_geometry.hpp"

namespace gcba {
namespace {

constexpr double kGirthSlack = 1e-12;
constexpr double kFourPointTolerance = 1e-9;

// Shortest u -> v path that does not use edge `skip`.
double distance_avoiding(const SphericalGraph& g, int u, int v, int skip) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(g.num_vertices()), inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[static_cast<std::size_t>(u)] = 0.0;
  queue.push({0.0, u});
  while (!queue.empty()) {
    const auto [d, w] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(w)]) continue;
    if (w == v) return d;
    for (const HalfEdge& h : g.half_edges(w)) {
      if (h.edge == skip) continue;
      const int z = g.head(h);
      const double nd = d + g.edge(h.edge).length;
      if (nd < dist[static_cast<std::size_t>(z)]) {
        dist[static_cast<std::size_t>(z)] = nd;
        queue.push({nd, z});
      }
    }
  }
  return inf;
}

void add_graph_checks(const SphericalGraph& g, ValidationReport& report) {
  int unreachable = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!std::isfinite(g.vertex_distance(0, v))) ++unreachable;
  }
  report.checks.push_back({"connected", unreachable == 0, unreachable == 0 ? 0.0 : -1.0,
                           std::to_string(unreachable) + " vertices unreachable from vertex 0"});

  int min_degree = std::numeric_limits<int>::max();
  int worst = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) < min_degree) {
      min_degree = g.degree(v);
      worst = v;
    }
  }
  std::ostringstream degree_detail;
  degree_detail << "minimum degree " << min_degree << " at vertex " << worst;
  report.checks.push_back({"min_degree", min_degree >= 2, static_cast<double>(min_degree - 2), degree_detail.str()});

  const double gi = girth(g);
  std::ostringstream girth_detail;
  girth_detail << "girth " << gi << " (need >= 2pi)";
  const double margin = std::isfinite(gi) ? gi - 2.0 * kPi : kPi;
  report.checks.push_back({"girth", margin >= -kGirthSlack, margin, girth_detail.str()});

  double longest = 0.0;
  for (const Edge& e : g.edges()) longest = std::max(longest, e.length);
  report.checks.push_back({"edge_length", longest <= kPi, kPi - longest, "longest internal edge after subdivision"});
}

}  // namespace

bool ValidationReport::passed() const { return failure() == nullptr; }

const CheckResult* ValidationReport::failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

double girth(const SphericalGraph& g) {
  double best = std::numeric_limits<double>::infinity();
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const double back = edge.a == edge.b ? 0.0 : distance_avoiding(g, edge.a, edge.b, e);
    best = std::min(best, edge.length + back);
  }
  return best;
}

ValidationReport validate_space(const SphericalGraph& g) {
  ValidationReport report;
  report.kind = "graph";
  add_graph_checks(g, report);
  return report;
}

ValidationReport validate_space(const ConeSpace& k, int quadruples, std::uint64_t seed) {
  ValidationReport report;
  report.kind = "cone";
  add_graph_checks(k.base(), report);
  if (!report.passed()) return report;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 2.0);
  auto draw = [&] { return ConePoint{random_point(k.base(), rng), radius(rng)}; };
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < quadruples; ++i) {
    const ConePoint x = draw(), y = draw(), u = draw(), v = draw();
    const double xv = cone_distance(k, x, v), yu = cone_distance(k, y, u);
    const double xu = cone_distance(k, x, u), yv = cone_distance(k, y, v);
    const double xy = cone_distance(k, x, y), uv = cone_distance(k, u, v);
    worst = std::max(worst, xv * xv + yu * yu - xu * xu - yv * yv - 2.0 * xy * uv);
  }
  report.quadruples = quadruples;
  report.worst_four_point = quadruples > 0 ? worst : 0.0;
  std::ostringstream detail;
  detail << quadruples << " quadruples, worst excess " << report.worst_four_point;
  report.checks.push_back({"four_point", report.worst_four_point <= kFourPointTolerance,
                           kFourPointTolerance - report.worst_four_point, detail.str()});
  return report;
}

}  // namespace gcba
