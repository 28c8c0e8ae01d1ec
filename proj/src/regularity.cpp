#include "gcba/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gcba {
namespace {

constexpr double kBoundTolerance = 1e-9;
constexpr double kCrossCheck = 1e-6;

// min over `pts` of the truncated distance, restricted to edge e.
PLFunction set_distance_profile(const SphericalGraph& g, const std::vector<GraphPoint>& pts, int e) {
  std::optional<PLFunction> acc;
  for (const auto& p : pts) {
    PLFunction f = DistanceField(g, p).profile(e).truncated(kPi);
    acc = acc ? pl_min(*acc, f) : std::move(f);
  }
  return *acc;
}

bool better(double value, int edge, double t, double best, int best_edge, double best_t) {
  if (value != best) return value > best;
  if (edge != best_edge) return edge < best_edge;
  return t < best_t;
}

// Checks the distance bounds implied by a passing collection; returns the
// smallest slack.
double bound_slack(const DirectionModel& model, const std::vector<std::vector<GraphPoint>>& xis,
                    const std::vector<GraphPoint>& etas, double eps, double delta) {
  double slack = std::numeric_limits<double>::infinity();
  const std::size_t k = xis.size();
  const bool upper = k >= 2 && delta < eps / 2.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& a : xis[i]) {
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        for (const auto& c : xis[j]) {
          const double d = model.angle(a, c);
          slack = std::min(slack, d - (kHalfPi - delta) + kBoundTolerance);
          if (upper) slack = std::min(slack, kPi - 2.0 * eps - d + kBoundTolerance);
        }
      }
      for (const auto& e : etas) {
        const double d = model.angle(a, e);
        slack = std::min(slack, d - (kHalfPi + eps) + kBoundTolerance);
        if (upper) slack = std::min(slack, kPi - eps / 2.0 - d + kBoundTolerance);
      }
    }
  }
  return slack;
}

std::vector<GraphPoint> one(const GraphPoint& x) { return {x}; }

}  // namespace

MarginReport check_direction_sets(const DirectionModel& model,
                                  const std::vector<std::vector<GraphPoint>>& xis,
                                  const std::vector<GraphPoint>& etas, double eps, double delta) {
  if (xis.empty()) throw InputError("collection needs k >= 1");
  if (etas.empty()) throw InputError("collection needs a regular direction eta");
  MarginReport r;
  r.k = static_cast<int>(xis.size());
  r.eps = eps;
  r.delta = delta;
  r.dimension_bound = model.dimension() + 1;
  r.k_within_bound = r.k <= r.dimension_bound;
  r.combinations = static_cast<int>(etas.size());
  for (const auto& s : xis) {
    if (s.empty()) throw InputError("direction set is empty");
    r.combinations *= static_cast<int>(s.size());
  }
  r.max_xi_xi = 0.0;
  bool have_pair = false;
  for (std::size_t i = 0; i < xis.size(); ++i) {
    for (std::size_t j = i + 1; j < xis.size(); ++j) {
      for (const auto& a : xis[i]) {
        for (const auto& c : xis[j]) {
          r.max_xi_xi = have_pair ? std::max(r.max_xi_xi, model.antipodal(a, c)) : model.antipodal(a, c);
          have_pair = true;
        }
      }
    }
  }
  r.delta_margin = have_pair ? r.max_xi_xi - kHalfPi : -kHalfPi;
  r.max_xi_eta = -std::numeric_limits<double>::infinity();
  for (const auto& s : xis) {
    for (const auto& a : s) {
      for (const auto& e : etas) r.max_xi_eta = std::max(r.max_xi_eta, model.antipodal(a, e));
    }
  }
  r.eps_margin = kHalfPi - r.max_xi_eta;
  r.verdict = r.delta_margin < delta && r.eps_margin > eps;
  if (r.verdict) {
    r.bound_slack = bound_slack(model, xis, etas, eps, delta);
    if (r.bound_slack < 0.0) throw ConsistencyError("noncritical collection violates the implied distance bounds");
  }
  return r;
}

MarginReport check_collection(const DirectionModel& model, const Collection& coll, double eps,
                              double delta) {
  if (!coll.eta) throw InputError("collection needs a regular direction eta");
  std::vector<std::vector<GraphPoint>> xis;
  for (const auto& x : coll.xis) {
    if (!model.contains(x)) throw InputError("collection point is not in the model");
    xis.push_back(one(x));
  }
  if (!model.contains(*coll.eta)) throw InputError("eta is not in the model");
  return check_direction_sets(model, xis, one(*coll.eta), eps, delta);
}

MarginReport check_map_at_point(const ConeSpace& k, const ConePoint& p,
                                const std::vector<ConePoint>& a_list, const ConePoint& b, double eps,
                                double delta) {
  const DirectionModel model = space_of_directions(k, p);
  std::vector<std::vector<GraphPoint>> xis;
  for (const auto& a : a_list) {
    if (k.same_point(a, p)) throw InputError("a_i coincides with p");
    xis.push_back(direction_at(k, model, p, a));
  }
  if (k.same_point(b, p)) throw InputError("b coincides with p");
  return check_direction_sets(model, xis, direction_at(k, model, p, b), eps, delta);
}

RhoReport check_map_rho(const ConeSpace& k, const ConePoint& p, const std::vector<ConePoint>& a_list,
                        const ConePoint& b, double eps, double delta, double rho, double h) {
  std::vector<double> da;
  for (const auto& a : a_list) {
    da.push_back(cone_distance(k, a, p));
    if (!(da.back() > rho)) throw InputError("|a_i p| must exceed rho");
  }
  const double db = cone_distance(k, b, p);
  if (!(db > rho)) throw InputError("|b p| must exceed rho");

  RhoReport r;
  r.rho = rho;
  r.h = h;
  r.worst_pair_sum = 0.0;
  r.worst_regular_sum = 0.0;
  const auto net = ball_net(k, p, rho * (1.0 - 1e-12), h);
  r.samples = static_cast<int>(net.size());
  for (const auto& x : net) {
    const double px = cone_distance(k, p, x);
    if (!(px > 0.0)) continue;
    std::vector<double> ang;
    for (std::size_t i = 0; i < a_list.size(); ++i) {
      ang.push_back(comparison_angle(da[i], px, cone_distance(k, a_list[i], x), ComparisonModel::euclidean));
    }
    const double bang = comparison_angle(db, px, cone_distance(k, b, x), ComparisonModel::euclidean);
    for (std::size_t i = 0; i < ang.size(); ++i) {
      r.worst_regular_sum = std::max(r.worst_regular_sum, ang[i] + bang);
      for (std::size_t j = i + 1; j < ang.size(); ++j) r.worst_pair_sum = std::max(r.worst_pair_sum, ang[i] + ang[j]);
    }
  }
  r.delta_slack = 1.5 * kPi + delta - r.worst_pair_sum;
  r.eps_slack = 1.5 * kPi - eps - r.worst_regular_sum;
  r.worst_slack = std::min(r.delta_slack, r.eps_slack);
  r.verdict = r.delta_slack > 0.0 && r.eps_slack > 0.0;
  return r;
}

NeighborhoodReport check_neighborhood(const ConeSpace& k, const ConePoint& p,
                                      const std::vector<ConePoint>& a_list, const ConePoint& b,
                                      double eps, double delta, double radius, double h) {
  auto pts = ball_net(k, p, radius, h);
  pts.insert(pts.begin(), k.normalize(p));
  NeighborhoodReport r;
  r.worst_eps_margin = std::numeric_limits<double>::infinity();
  r.worst_delta_margin = -std::numeric_limits<double>::infinity();
  for (const auto& x : pts) {
    const MarginReport m = check_map_at_point(k, x, a_list, b, eps, delta);
    ++r.samples;
    if (m.verdict) ++r.passed;
    r.worst_eps_margin = std::min(r.worst_eps_margin, m.eps_margin);
    r.worst_delta_margin = std::max(r.worst_delta_margin, m.delta_margin);
  }
  return r;
}

RegularDirection search_regular_direction(const DirectionModel& model, const std::vector<GraphPoint>& xis) {
  if (xis.empty()) throw InputError("search needs at least one xi");
  RegularDirection best;
  best.margin = -std::numeric_limits<double>::infinity();
  if (model.kind == DirectionKind::discrete_pi) {
    for (int j = 0; j < model.discrete.size; ++j) {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& x : xis) m = std::min(m, kHalfPi - model.discrete.antipodal_distance(x.vertex, j));
      if (m > best.margin) best = {GraphPoint::at_vertex(j), m};
    }
    return best;
  }
  const SphericalGraph& g = model.graph;
  std::vector<AntipodeSet> ants;
  for (const auto& x : xis) ants.push_back(antipode_set(g, x));
  int best_edge = -1;
  double best_t = 0.0;
  for (int e = 0; e < g.num_edges(); ++e) {
    std::optional<PLFunction> worst;
    for (const auto& a : ants) {
      PLFunction f = antipodal_profile(g, a, e);
      worst = worst ? pl_max(*worst, f) : std::move(f);
    }
    const auto knot = worst->scaled(-1.0).shifted(kHalfPi).argmax();
    if (best_edge < 0 || better(knot.v, e, knot.t, best.margin, best_edge, best_t)) {
      best.margin = knot.v;
      best_edge = e;
      best_t = knot.t;
    }
  }
  best.eta = g.normalize(GraphPoint::on_edge(best_edge, best_t));
  double check = std::numeric_limits<double>::infinity();
  for (const auto& x : xis) check = std::min(check, kHalfPi - antipodal_distance(g, x, best.eta).value);
  if (std::abs(check - best.margin) > kCrossCheck) {
    throw ConsistencyError("regular direction search disagrees with the antipodal distance");
  }
  return best;
}

namespace {

struct Candidate {
  int edge = -1;
  double t = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      const double lo = std::max(x.lo, y.lo);
      const double hi = std::min(x.hi, y.hi);
      if (lo <= hi + 1e-12) out.push_back({lo, std::max(lo, hi)});
    }
  }
  return out;
}

FindVResult finish_v(const DirectionModel& model, const Collection& coll, const GraphPoint& v) {
  FindVResult r;
  r.v = v;
  r.m1 = kHalfPi - model.angle(v, coll.xis.front());
  r.m2 = model.angle(v, *coll.eta) - kHalfPi;
  for (std::size_t i = 1; i < coll.xis.size(); ++i) {
    r.max_level_residual = std::max(r.max_level_residual, std::abs(model.angle(v, coll.xis[i]) - kHalfPi));
  }
  return r;
}

// Moves xi_1 toward eta along a shortest path and stops where |. xi_2| = pi/2.
std::optional<GraphPoint> fallback_v(const DirectionModel& model, const Collection& coll) {
  const SphericalGraph& g = model.graph;
  const auto paths = geodesics(g, coll.xis.front(), *coll.eta, distance(g, coll.xis.front(), *coll.eta, false));
  if (paths.empty() || coll.xis.size() < 2) return std::nullopt;
  const GeodesicPath& path = paths.front();
  auto level = [&](double s) { return model.angle(path.at(g, s), coll.xis[1]) - kHalfPi; };
  const int steps = std::max(8, static_cast<int>(std::ceil(path.length / 1e-3)));
  double prev = 0.0;
  double fprev = level(0.0);
  for (int i = 1; i <= steps; ++i) {
    const double s = path.length * i / steps;
    const double fs = level(s);
    if ((fprev <= 0.0) != (fs <= 0.0)) {
      double lo = prev, hi = s;
      for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((level(mid) <= 0.0) == (fprev <= 0.0)) lo = mid; else hi = mid;
      }
      return path.at(g, 0.5 * (lo + hi));
    }
    prev = s;
    fprev = fs;
  }
  return std::nullopt;
}

}  // namespace

FindVResult find_v(const DirectionModel& model, const Collection& coll, double eps, double delta) {
  const MarginReport check = check_collection(model, coll, eps, delta);
  if (!check.verdict) throw InputError("collection is not (eps, delta)-noncritical");
  if (model.kind == DirectionKind::discrete_pi) {
    if (coll.k() != 1) throw ConsistencyError("discrete direction set carries a noncritical collection with k > 1");
    GraphPoint best = GraphPoint::at_vertex(0);
    double value = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < model.discrete.size; ++j) {
      const GraphPoint v = GraphPoint::at_vertex(j);
      const double m = std::min(kHalfPi - model.angle(v, coll.xis.front()), model.angle(v, *coll.eta) - kHalfPi);
      if (m > value) {
        value = m;
        best = v;
      }
    }
    return finish_v(model, coll, best);
  }

  const SphericalGraph& g = model.graph;
  const DistanceField from_xi1(g, coll.xis.front());
  const DistanceField from_eta(g, *coll.eta);
  std::vector<DistanceField> levels;
  for (std::size_t i = 1; i < coll.xis.size(); ++i) levels.emplace_back(g, coll.xis[i]);

  Candidate best;
  for (int e = 0; e < g.num_edges(); ++e) {
    const PLFunction near = from_xi1.profile(e).truncated(kPi).scaled(-1.0).shifted(kHalfPi);
    const PLFunction far = from_eta.profile(e).truncated(kPi).shifted(-kHalfPi);
    const PLFunction objective = pl_min(near, far);
    std::vector<Interval> feasible{{0.0, g.edge(e).length}};
    for (const auto& f : levels) feasible = intersect(feasible, f.profile(e).truncated(kPi).level(kHalfPi, kTau));
    for (const auto& iv : feasible) {
      const auto knot = objective.argmax(iv.lo, iv.hi);
      if (best.edge < 0 || better(knot.v, e, knot.t, best.value, best.edge, best.t)) best = {e, knot.t, knot.v};
    }
  }
  if (best.edge >= 0 && best.value > 0.0) {
    return finish_v(model, coll, g.normalize(GraphPoint::on_edge(best.edge, best.t)));
  }
  if (auto v = fallback_v(model, coll)) {
    FindVResult r = finish_v(model, coll, *v);
    r.used_fallback = true;
    if (r.m1 > 0.0 && r.m2 > 0.0 && r.max_level_residual <= kTau) return r;
  }
  throw ConsistencyError("find_v: no v satisfies the conditions (falsifying instance)");
}

InductionResult induction_step(const SphericalGraph& g, const Collection& coll, const GraphPoint& x,
                               InductionCase which, double eps, double delta) {
  if (!coll.eta) throw InputError("collection needs a regular direction eta");
  std::vector<GraphPoint> pts = coll.xis;
  pts.push_back(*coll.eta);
  const DistanceField from_x(g, x);
  for (const auto& p : pts) {
    const double d = std::min(from_x.to(g.normalize(p)), kPi);
    if (which == InductionCase::near && !(d < kHalfPi + delta)) {
      throw InputError("near case needs every point within pi/2 + delta of x");
    }
    if (which == InductionCase::far && !(d >= kHalfPi - delta)) {
      throw InputError("far case needs every point at distance >= pi/2 - delta from x");
    }
  }
  InductionResult out;
  out.sigma_x = direction_space_graph(g, x);
  std::vector<std::vector<GraphPoint>> xi_sets;
  for (const auto& xi : coll.xis) {
    out.xi_dirs.push_back(direction_of(g, x, xi));
    std::vector<GraphPoint> set;
    for (int d : out.xi_dirs.back()) set.push_back(GraphPoint::at_vertex(d));
    xi_sets.push_back(std::move(set));
  }
  out.eta_dirs = direction_of(g, x, *coll.eta);
  std::vector<GraphPoint> eta_set;
  for (int d : out.eta_dirs) eta_set.push_back(GraphPoint::at_vertex(d));
  out.report = check_direction_sets(DirectionModel::of_discrete(out.sigma_x), xi_sets, eta_set, eps, delta);
  return out;
}

CertificateReport differential_certificate(const ConeSpace& k, const std::vector<ConePoint>& samples,
                                           const std::vector<ConePoint>& a_list, const ConePoint& b,
                                           double eps) {
  if (a_list.empty()) throw InputError("certificate needs at least one a_i");
  CertificateReport rep;
  rep.worst_cond1 = std::numeric_limits<double>::infinity();
  rep.worst_cond2 = std::numeric_limits<double>::infinity();
  for (const ConePoint& p : samples) {
    const DirectionModel model = space_of_directions(k, p);
    const SphericalGraph& g = model.graph;
    std::vector<std::vector<GraphPoint>> dirs;
    for (const auto& a : a_list) dirs.push_back(direction_at(k, model, p, a));

    // (1) for each i some xi with f_i'(xi) < -eps and f_j'(xi) = 0 (j != i).
    double cond1 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      double best = -std::numeric_limits<double>::infinity();
      for (int e = 0; e < g.num_edges(); ++e) {
        std::vector<Interval> feasible{{0.0, g.edge(e).length}};
        for (std::size_t j = 0; j < dirs.size(); ++j) {
          if (j != i) feasible = intersect(feasible, set_distance_profile(g, dirs[j], e).level(kHalfPi, kTau));
        }
        const PLFunction closeness = set_distance_profile(g, dirs[i], e).scaled(-1.0);
        for (const auto& iv : feasible) best = std::max(best, std::cos(-closeness.argmax(iv.lo, iv.hi).v));
      }
      cond1 = std::min(cond1, best - eps);
    }

    // (2) some eta with eps < f_j'(eta) < 1/eps for all j.
    double far = -std::numeric_limits<double>::infinity();
    for (int e = 0; e < g.num_edges(); ++e) {
      std::optional<PLFunction> nearest;
      for (const auto& d : dirs) {
        PLFunction f = set_distance_profile(g, d, e);
        nearest = nearest ? pl_min(*nearest, f) : std::move(f);
      }
      far = std::max(far, nearest->argmax().v);
    }
    if (!k.same_point(b, p)) {
      for (const auto& bd : direction_at(k, model, p, b)) {
        double m = kPi;
        for (const auto& d : dirs) {
          for (const auto& a : d) m = std::min(m, model.angle(a, bd));
        }
        far = std::max(far, m);
      }
    }
    const double slope = -std::cos(far);
    const double cond2 = std::min(slope - eps, 1.0 / eps - slope);

    ++rep.samples;
    if (cond1 > 0.0 && cond2 > 0.0) ++rep.certified;
    rep.worst_cond1 = std::min(rep.worst_cond1, cond1);
    rep.worst_cond2 = std::min(rep.worst_cond2, cond2);
  }
  rep.fraction = rep.samples > 0 ? static_cast<double>(rep.certified) / rep.samples : 0.0;
  return rep;
}

}  // namespace gcba
