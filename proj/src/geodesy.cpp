#include "gcba/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace gcba {
namespace {

constexpr std::size_t kMaxPaths = 1'000'000;

HalfEdge reversed(HalfEdge h) { return {h.edge, !h.forward}; }

void push_traversal(std::vector<Traversal>& out, Traversal t) {
  if (!out.empty()) {
    Traversal& last = out.back();
    if (last.edge == t.edge && last.to == t.from && last.forward() == t.forward()) {
      last.to = t.to;
      return;
    }
  }
  out.push_back(t);
}

// Continues on edge `e` from offset `o` in the given sense for `remaining`.
void continue_walk(const SphericalGraph& g, int e, double o, bool fwd, double remaining,
                   GeodesicPath& path) {
  while (remaining > 0.0) {
    const double len = g.edge(e).length;
    const double available = fwd ? len - o : o;
    if (remaining <= available) {
      push_traversal(path.traversals, {e, o, fwd ? o + remaining : o - remaining});
      path.length += remaining;
      return;
    }
    if (available > 0.0) {
      push_traversal(path.traversals, {e, o, fwd ? len : 0.0});
      path.length += available;
      remaining -= available;
    }
    const HalfEdge arrival{e, fwd};
    const int v = g.head(arrival);
    std::optional<HalfEdge> next;
    for (const HalfEdge& h : g.half_edges(v)) {
      if (h == reversed(arrival)) continue;
      next = h;
      break;
    }
    if (!next) return;  // leaf: cannot continue
    e = next->edge;
    fwd = next->forward;
    o = fwd ? 0.0 : g.edge(e).length;
  }
}

struct PathSearch {
  const SphericalGraph& g;
  GraphPoint target;
  double budget;
  std::vector<GeodesicPath> found;
  GeodesicPath current;

  void record(const Traversal* last_piece, double extra) {
    if (found.size() >= kMaxPaths) throw ConsistencyError("geodesic enumeration exceeded limit");
    GeodesicPath p = current;
    if (last_piece != nullptr) push_traversal(p.traversals, *last_piece);
    p.length += extra;
    found.push_back(std::move(p));
  }

  // Traverse half-edge h from its tail, having accumulated current.length.
  void traverse(HalfEdge h) {
    const Edge& e = g.edge(h.edge);
    const double from = h.forward ? 0.0 : e.length;
    if (!target.is_vertex() && target.edge == h.edge) {
      const double along = h.forward ? target.offset : e.length - target.offset;
      if (current.length + along <= budget) {
        Traversal t{h.edge, from, target.offset};
        record(&t, along);
      }
    }
    const double reach = current.length + e.length;
    if (reach > budget) return;
    GeodesicPath saved = current;
    push_traversal(current.traversals, {h.edge, from, h.forward ? e.length : 0.0});
    current.length = reach;
    const int v = g.head(h);
    if (target.is_vertex() && target.vertex == v) record(nullptr, 0.0);
    for (const HalfEdge& next : g.half_edges(v)) {
      if (next == reversed(h)) continue;
      traverse(next);
    }
    current = std::move(saved);
  }

  // Leave an edge point at offset t0 in the given sense.
  void leave_edge_point(int edge, double t0, bool fwd) {
    const Edge& e = g.edge(edge);
    if (!target.is_vertex() && target.edge == edge &&
        (fwd ? target.offset > t0 : target.offset < t0)) {
      const double along = std::abs(target.offset - t0);
      if (along <= budget) {
        Traversal t{edge, t0, target.offset};
        record(&t, along);
      }
    }
    const double along = fwd ? e.length - t0 : t0;
    if (along > budget) return;
    current.traversals = {{edge, t0, fwd ? e.length : 0.0}};
    current.length = along;
    const HalfEdge arrival{edge, fwd};
    const int v = g.head(arrival);
    if (target.is_vertex() && target.vertex == v) record(nullptr, 0.0);
    for (const HalfEdge& next : g.half_edges(v)) {
      if (next == reversed(arrival)) continue;
      traverse(next);
    }
    current.traversals.clear();
    current.length = 0.0;
  }
};

bool path_less(const GeodesicPath& p, const GeodesicPath& q) {
  if (std::abs(p.length - q.length) > kTau) return p.length < q.length;
  const std::size_t n = std::min(p.traversals.size(), q.traversals.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = p.traversals[i];
    const auto& b = q.traversals[i];
    if (a.edge != b.edge) return a.edge < b.edge;
    if (a.to != b.to) return a.to < b.to;
  }
  return p.traversals.size() < q.traversals.size();
}

// Farthest point of a segment on another edge, as a function of the offset
// on edge e.
PLFunction far_profile_other_edge(const SphericalGraph& g, const AntipodeSegment& s, int e) {
  const Edge& seg_edge = g.edge(s.edge);
  const PLFunction alpha = DistanceField(g, GraphPoint::at_vertex(seg_edge.a)).profile(e);
  const PLFunction beta = DistanceField(g, GraphPoint::at_vertex(seg_edge.b)).profile(e);
  const PLFunction via_hi = alpha.shifted(s.hi);
  const PLFunction via_lo = beta.shifted(seg_edge.length - s.lo);
  const PLFunction peak = pl_sum(alpha, beta).shifted(seg_edge.length).scaled(0.5);
  return pl_min(pl_min(via_hi, via_lo), peak);
}

// Same, for a segment on e itself: distances along e are circular with
// period C = length(e) + |ab|.
PLFunction far_profile_same_edge(const SphericalGraph& g, const AntipodeSegment& s) {
  const Edge& edge = g.edge(s.edge);
  const double c = edge.length + g.vertex_distance(edge.a, edge.b);
  const double half = 0.5 * c;
  auto circ = [c](double x) {
    x = std::abs(x);
    return std::min(x, c - x);
  };
  auto eval = [&](double t) {
    double best = std::max(circ(t - s.lo), circ(t - s.hi));
    for (double sc : {t + half, t - half}) {
      if (sc >= s.lo && sc <= s.hi) best = std::max(best, half);
    }
    return best;
  };
  const double mid = 0.5 * (s.lo + s.hi);
  return PLFunction::sample(edge.length,
                            {s.lo, s.hi, s.lo - half, s.lo + half, s.hi - half, s.hi + half, mid,
                             mid - half, mid + half},
                            eval);
}

}  // namespace

DistanceField::DistanceField(const SphericalGraph& graph, GraphPoint source)
    : graph_(&graph), source_(graph.normalize(source)) {
  const int n = graph.num_vertices();
  dist_.resize(static_cast<std::size_t>(n));
  if (source_.is_vertex()) {
    for (int w = 0; w < n; ++w) dist_[static_cast<std::size_t>(w)] = graph.vertex_distance(source_.vertex, w);
    return;
  }
  const Edge& e = graph.edge(source_.edge);
  const double t0 = source_.offset;
  for (int w = 0; w < n; ++w) {
    dist_[static_cast<std::size_t>(w)] =
        std::min(t0 + graph.vertex_distance(e.a, w), e.length - t0 + graph.vertex_distance(e.b, w));
  }
}

double DistanceField::to(const GraphPoint& x) const {
  if (x.is_vertex()) return to_vertex(x.vertex);
  const Edge& e = graph_->edge(x.edge);
  double d = std::min(to_vertex(e.a) + x.offset, to_vertex(e.b) + e.length - x.offset);
  if (!source_.is_vertex() && source_.edge == x.edge) d = std::min(d, std::abs(x.offset - source_.offset));
  return d;
}

PLFunction DistanceField::profile(int e) const {
  const Edge& edge = graph_->edge(e);
  const double da = to_vertex(edge.a);
  const double db = to_vertex(edge.b);
  std::vector<double> knots{0.5 * (db + edge.length - da)};
  if (!source_.is_vertex() && source_.edge == e) {
    const double t0 = source_.offset;
    knots.insert(knots.end(), {t0, 0.5 * (t0 - da), 0.5 * (db + edge.length + t0)});
  }
  return PLFunction::sample(edge.length, std::move(knots),
                            [&](double t) { return to(GraphPoint::on_edge(e, t)); });
}

double distance(const SphericalGraph& g, const GraphPoint& x, const GraphPoint& y, bool truncated) {
  const double d = DistanceField(g, x).to(g.normalize(y));
  return truncated ? std::min(d, kPi) : d;
}

GraphPoint GeodesicPath::end(const SphericalGraph& g) const {
  if (traversals.empty()) return start;
  const Traversal& t = traversals.back();
  return g.normalize(GraphPoint::on_edge(t.edge, t.to));
}

GraphPoint GeodesicPath::at(const SphericalGraph& g, double s) const {
  if (s <= 0.0 || traversals.empty()) return start;
  double acc = 0.0;
  for (const Traversal& t : traversals) {
    const double len = t.length();
    if (s <= acc + len) {
      const double o = t.forward() ? t.from + (s - acc) : t.from - (s - acc);
      return g.normalize(GraphPoint::on_edge(t.edge, std::clamp(o, 0.0, g.edge(t.edge).length)));
    }
    acc += len;
  }
  return end(g);
}

HalfEdge GeodesicPath::initial_direction(const SphericalGraph&) const {
  if (traversals.empty()) throw InputError("zero-length path has no direction");
  return {traversals.front().edge, traversals.front().forward()};
}

std::vector<GeodesicPath> geodesics(const SphericalGraph& g, const GraphPoint& x,
                                    const GraphPoint& y, double max_len) {
  if (max_len > 2.0 * kPi + kTau) throw InputError("geodesic enumeration is limited to length 2*pi");
  PathSearch search{g, g.normalize(y), max_len + kTau, {}, {}};
  const GraphPoint start = g.normalize(x);
  search.current.start = start;
  if (start == search.target) search.record(nullptr, 0.0);
  if (start.is_vertex()) {
    for (const HalfEdge& h : g.half_edges(start.vertex)) search.traverse(h);
  } else {
    search.leave_edge_point(start.edge, start.offset, false);
    search.leave_edge_point(start.edge, start.offset, true);
  }
  for (auto& p : search.found) p.start = start;
  std::sort(search.found.begin(), search.found.end(), path_less);
  return std::move(search.found);
}

GeodesicPath walk(const SphericalGraph& g, const GraphPoint& x, HalfEdge dir, double length) {
  GeodesicPath path;
  path.start = g.normalize(x);
  double o = 0.0;
  if (path.start.is_vertex()) {
    if (g.tail(dir) != path.start.vertex) throw InputError("direction does not leave the start vertex");
    o = dir.forward ? 0.0 : g.edge(dir.edge).length;
  } else {
    if (dir.edge != path.start.edge) throw InputError("direction does not lie on the start edge");
    o = path.start.offset;
  }
  continue_walk(g, dir.edge, o, dir.forward, length, path);
  return path;
}

GeodesicPath extend(const SphericalGraph& g, const GeodesicPath& path, double extra) {
  if (path.traversals.empty()) throw InputError("cannot extend a zero-length path");
  GeodesicPath out = path;
  const Traversal& last = path.traversals.back();
  continue_walk(g, last.edge, last.to, last.forward(), extra, out);
  return out;
}

std::vector<GraphPoint> AntipodeSet::representatives(const SphericalGraph& g) const {
  std::vector<GraphPoint> out;
  for (const auto& s : segments) {
    out.push_back(g.normalize(GraphPoint::on_edge(s.edge, s.lo)));
    out.push_back(g.normalize(GraphPoint::on_edge(s.edge, s.hi)));
  }
  out.insert(out.end(), points.begin(), points.end());
  return out;
}

AntipodeSet antipode_set(const SphericalGraph& g, const GraphPoint& xi) {
  const DistanceField field(g, xi);
  AntipodeSet out;
  std::vector<GraphPoint> points;
  for (int e = 0; e < g.num_edges(); ++e) {
    const PLFunction prof = field.profile(e);
    const auto intervals = prof.superlevel(kPi, 0.0);
    for (const Interval& iv : intervals) {
      if (iv.width() > 1e-12) {
        out.segments.push_back({e, iv.lo, iv.hi});
      } else {
        points.push_back(g.normalize(GraphPoint::on_edge(e, iv.lo)));
      }
    }
    if (intervals.empty()) {
      const auto best = prof.argmax();
      if (best.v >= kPi - kTau) points.push_back(g.normalize(GraphPoint::on_edge(e, best.t)));
    }
  }
  auto covered = [&](const GraphPoint& p) {
    for (const auto& s : out.segments) {
      const Edge& e = g.edge(s.edge);
      if (p.is_vertex()) {
        if ((s.lo <= 0.0 && p.vertex == e.a) || (s.hi >= e.length && p.vertex == e.b)) return true;
      } else if (p.edge == s.edge && p.offset >= s.lo - 1e-12 && p.offset <= s.hi + 1e-12) {
        return true;
      }
    }
    return false;
  };
  std::sort(points.begin(), points.end(), locus_less);
  for (const GraphPoint& p : points) {
    if (covered(p)) continue;
    if (!out.points.empty()) {
      const GraphPoint& q = out.points.back();
      if (q.is_vertex() ? (p.is_vertex() && p.vertex == q.vertex)
                        : (!p.is_vertex() && p.edge == q.edge && std::abs(p.offset - q.offset) <= 1e-12)) {
        continue;
      }
    }
    out.points.push_back(p);
  }
  return out;
}

AntipodalDistance antipodal_distance(const SphericalGraph& g, const GraphPoint& xi,
                                     const GraphPoint& eta) {
  if (g.metric_mode() != MetricMode::pi_truncated) {
    throw InputError("antipodal distance requires the pi-truncated metric");
  }
  const AntipodeSet ant = antipode_set(g, xi);
  if (ant.empty()) throw ConsistencyError("antipode set is empty; space is not geodesically complete");
  const DistanceField from_eta(g, eta);
  const DistanceField from_xi(g, xi);

  double via_antipodes = -std::numeric_limits<double>::infinity();
  for (const auto& s : ant.segments) {
    via_antipodes = std::max(via_antipodes, from_eta.profile(s.edge).truncated(kPi).argmax(s.lo, s.hi).v);
  }
  for (const auto& p : ant.points) via_antipodes = std::max(via_antipodes, std::min(kPi, from_eta.to(p)));

  double via_sup = -std::numeric_limits<double>::infinity();
  for (int e = 0; e < g.num_edges(); ++e) {
    const PLFunction sum = pl_sum(from_xi.profile(e).truncated(kPi), from_eta.profile(e).truncated(kPi));
    via_sup = std::max(via_sup, sum.argmax().v - kPi);
  }
  AntipodalDistance out{via_antipodes, via_sup, std::abs(via_antipodes - via_sup)};
  if (out.method_gap > 1e-6) {
    throw ConsistencyError("antipodal distance formulas disagree by " + std::to_string(out.method_gap));
  }
  return out;
}

PLFunction antipodal_profile(const SphericalGraph& g, const AntipodeSet& ant, int e) {
  std::optional<PLFunction> acc;
  auto fold = [&acc](PLFunction f) { acc = acc ? pl_max(*acc, f) : std::move(f); };
  for (const auto& s : ant.segments) {
    fold(s.edge == e ? far_profile_same_edge(g, s) : far_profile_other_edge(g, s, e));
  }
  for (const auto& p : ant.points) fold(DistanceField(g, p).profile(e));
  if (!acc) throw ConsistencyError("antipode set is empty; space is not geodesically complete");
  return acc->truncated(kPi);
}

DiscretePiSet direction_space_graph(const SphericalGraph& g, const GraphPoint& x) {
  auto dirs = g.directions_at(g.normalize(x));
  return {static_cast<int>(dirs.size()), std::move(dirs)};
}

std::vector<int> direction_of(const SphericalGraph& g, const GraphPoint& x, const GraphPoint& target) {
  const GraphPoint from = g.normalize(x);
  const GraphPoint to = g.normalize(target);
  if (from == to) throw InputError("direction toward the point itself is undefined");
  const double d = DistanceField(g, from).to(to);
  const auto dirs = g.directions_at(from);
  std::vector<int> out;
  for (const GeodesicPath& p : geodesics(g, from, to, std::min(d, 2.0 * kPi))) {
    if (p.traversals.empty()) continue;
    const HalfEdge h = p.initial_direction(g);
    const auto it = std::find(dirs.begin(), dirs.end(), h);
    if (it != dirs.end()) out.push_back(static_cast<int>(it - dirs.begin()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gcba

namespace gcba {

std::vector<GraphPoint> graph_net(const SphericalGraph& g, double spacing) {
  if (!(spacing > 0.0)) throw InputError("net spacing must be positive");
  std::vector<GraphPoint> out;
  for (int v = 0; v < g.num_vertices(); ++v) out.push_back(GraphPoint::at_vertex(v));
  for (int e = 0; e < g.num_edges(); ++e) {
    const double len = g.edge(e).length;
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int j = 1; j < pieces; ++j) out.push_back(GraphPoint::on_edge(e, len * j / pieces));
  }
  return out;
}

GraphPoint point_at_arclength(const SphericalGraph& g, double s) {
  for (int e = 0; e < g.num_edges(); ++e) {
    const double len = g.edge(e).length;
    if (s <= len || e + 1 == g.num_edges()) return g.normalize(GraphPoint::on_edge(e, std::clamp(s, 0.0, len)));
    s -= len;
  }
  return GraphPoint::at_vertex(0);
}

GraphPoint random_point(const SphericalGraph& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return point_at_arclength(g, unit(rng) * g.total_length());
}

}  // namespace gcba
