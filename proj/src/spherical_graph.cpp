#include "gcba/spherical_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace gcba {

bool locus_less(const GraphPoint& x, const GraphPoint& y) {
  if (x.is_vertex() != y.is_vertex()) return x.is_vertex();
  if (x.is_vertex()) return x.vertex < y.vertex;
  if (x.edge != y.edge) return x.edge < y.edge;
  return x.offset < y.offset;
}

SphericalGraph SphericalGraph::from_edges(int num_vertices, std::vector<InputEdge> edges,
                                          MetricMode mode) {
  if (num_vertices <= 0) throw InputError("graph needs at least one vertex");
  SphericalGraph g;
  g.mode_ = mode;
  g.num_input_vertices_ = num_vertices;
  g.input_edges_ = std::move(edges);
  int next_vertex = num_vertices;
  for (std::size_t i = 0; i < g.input_edges_.size(); ++i) {
    const InputEdge& in = g.input_edges_[i];
    if (in.a < 0 || in.a >= num_vertices || in.b < 0 || in.b >= num_vertices) {
      throw InputError("edge " + std::to_string(i) + " references an unknown vertex");
    }
    if (!(in.length > 0.0) || !std::isfinite(in.length)) {
      throw InputError("edge " + std::to_string(i) + " must have positive finite length");
    }
    const int pieces = std::max(1, static_cast<int>(std::ceil(in.length / kPi - 1e-12)));
    const double piece = in.length / pieces;
    std::vector<int> ids;
    int from = in.a;
    for (int j = 0; j < pieces; ++j) {
      const int to = (j + 1 == pieces) ? in.b : next_vertex++;
      ids.push_back(static_cast<int>(g.edges_.size()));
      g.edges_.push_back({from, to, piece, static_cast<int>(i), j * piece});
      from = to;
    }
    g.pieces_.push_back(std::move(ids));
  }
  g.adjacency_.assign(static_cast<std::size_t>(next_vertex), {});
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    g.adjacency_[static_cast<std::size_t>(g.edges_[e].a)].push_back({static_cast<int>(e), true});
    g.adjacency_[static_cast<std::size_t>(g.edges_[e].b)].push_back({static_cast<int>(e), false});
  }

  const std::size_t n = g.adjacency_.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  g.vertex_dist_.assign(n * n, inf);
  using Item = std::pair<double, int>;
  for (std::size_t s = 0; s < n; ++s) {
    double* dist = &g.vertex_dist_[s * n];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[s] = 0.0;
    queue.push({0.0, static_cast<int>(s)});
    while (!queue.empty()) {
      auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[v]) continue;
      for (const HalfEdge& h : g.adjacency_[static_cast<std::size_t>(v)]) {
        const int w = g.head(h);
        const double nd = d + g.edges_[static_cast<std::size_t>(h.edge)].length;
        if (nd < dist[w]) {
          dist[w] = nd;
          queue.push({nd, w});
        }
      }
    }
  }
  return g;
}

SphericalGraph SphericalGraph::circle(double length, MetricMode mode) {
  SphericalGraph g = from_edges(1, {{0, 0, length}}, mode);
  g.circle_length_ = length;
  return g;
}

SphericalGraph SphericalGraph::suspension(int arcs, MetricMode mode) {
  if (arcs < 1) throw InputError("suspension needs at least one arc");
  std::vector<InputEdge> edges(static_cast<std::size_t>(arcs), InputEdge{0, 1, kPi});
  return from_edges(2, std::move(edges), mode);
}

SphericalGraph SphericalGraph::with_metric_mode(MetricMode mode) const {
  SphericalGraph g = *this;
  g.mode_ = mode;
  return g;
}

double SphericalGraph::total_length() const {
  double sum = 0.0;
  for (const auto& e : edges_) sum += e.length;
  return sum;
}

GraphPoint SphericalGraph::normalize(GraphPoint x) const {
  if (x.is_vertex()) {
    if (x.vertex >= num_vertices()) throw InputError("vertex " + std::to_string(x.vertex) + " not in graph");
    return GraphPoint::at_vertex(x.vertex);
  }
  if (x.edge < 0 || x.edge >= num_edges()) throw InputError("edge " + std::to_string(x.edge) + " not in graph");
  const Edge& e = edge(x.edge);
  if (!std::isfinite(x.offset) || x.offset < -1e-12 || x.offset > e.length + 1e-12) {
    throw InputError("offset outside edge " + std::to_string(x.edge));
  }
  if (x.offset <= 0.0) return GraphPoint::at_vertex(e.a);
  if (x.offset >= e.length) return GraphPoint::at_vertex(e.b);
  return x;
}

bool SphericalGraph::contains(const GraphPoint& x) const {
  if (x.is_vertex()) return x.vertex < num_vertices();
  if (x.edge < 0 || x.edge >= num_edges()) return false;
  return x.offset >= 0.0 && x.offset <= edge(x.edge).length;
}

GraphPoint SphericalGraph::from_input(int input_edge, double offset) const {
  if (input_edge < 0 || input_edge >= static_cast<int>(input_edges_.size())) {
    throw InputError("edge " + std::to_string(input_edge) + " not in description");
  }
  const auto& ids = pieces_[static_cast<std::size_t>(input_edge)];
  const double len = input_edges_[static_cast<std::size_t>(input_edge)].length;
  if (!std::isfinite(offset) || offset < -1e-12 || offset > len + 1e-12) {
    throw InputError("offset " + std::to_string(offset) + " outside edge " + std::to_string(input_edge));
  }
  offset = std::clamp(offset, 0.0, len);
  const double piece = len / static_cast<double>(ids.size());
  std::size_t j = std::min(ids.size() - 1, static_cast<std::size_t>(offset / piece));
  // Floor may land one piece late when offset sits on a piece boundary.
  while (j > 0 && edges_[static_cast<std::size_t>(ids[j])].input_offset > offset) --j;
  const Edge& e = edges_[static_cast<std::size_t>(ids[j])];
  return normalize(GraphPoint::on_edge(ids[j], std::min(offset - e.input_offset, e.length)));
}

SphericalGraph::InputLocus SphericalGraph::to_input(const GraphPoint& x) const {
  InputLocus out;
  if (x.is_vertex() && x.vertex < num_input_vertices_) {
    out.is_vertex = true;
    out.vertex = x.vertex;
    return out;
  }
  if (x.is_vertex()) {
    // Subdivision vertex: the start of the piece leaving it.
    for (const HalfEdge& h : half_edges(x.vertex)) {
      const Edge& e = edge(h.edge);
      out.edge = e.input_edge;
      out.offset = h.forward ? e.input_offset : e.input_offset + e.length;
      return out;
    }
  }
  const Edge& e = edge(x.edge);
  out.edge = e.input_edge;
  out.offset = e.input_offset + x.offset;
  return out;
}

std::vector<HalfEdge> SphericalGraph::directions_at(const GraphPoint& x) const {
  if (x.is_vertex()) {
    auto span = half_edges(x.vertex);
    return {span.begin(), span.end()};
  }
  return {HalfEdge{x.edge, false}, HalfEdge{x.edge, true}};
}

}  // namespace gcba
