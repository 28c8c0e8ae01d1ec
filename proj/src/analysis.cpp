#include "gcba/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "gcba/local_solver.hpp"
#include "gcba/parallel.hpp"

namespace gcba {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPreimageResidual = 1e-6;

std::vector<Eigen::VectorXd> circle_targets(const Eigen::VectorXd& center, double radius, int m, double phase,
                                            std::mt19937_64& rng) {
  std::vector<Eigen::VectorXd> out;
  const auto k = center.size();
  if (k == 1) {
    for (double sign : {-1.0, 1.0}) out.push_back(center + Eigen::VectorXd::Constant(1, sign * radius));
    return out;
  }
  std::normal_distribution<double> normal;
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd u(k);
    if (k == 2) {
      const double phi = 2.0 * kPi * (j + phase) / m;
      u << std::cos(phi), std::sin(phi);
    } else {
      for (Eigen::Index i = 0; i < k; ++i) u(i) = normal(rng);
      u.normalize();
    }
    out.push_back(center + radius * u);
  }
  return out;
}

struct Probe {
  ConePoint x;
  double r = 0.0;
  Eigen::VectorXd fx;
};

struct ProbeOutcome {
  int checked = 0;
  int failures = 0;
  double max_residual = 0.0;
};

ProbeOutcome run_probe(const ConeSpace& k, const ConeMap& f, const Probe& probe, double c, int m, double phase,
                       std::uint64_t seed, bool stop_early) {
  std::mt19937_64 rng(seed);
  ProbeOutcome out;
  for (const auto& target : circle_targets(probe.fx, c * probe.r, m, phase, rng)) {
    const auto seeds = default_seeds(k, f, target, probe.x, probe.r);
    const SolveResult s = solve_multistart(k, f, target, seeds, probe.x, probe.r);
    ++out.checked;
    const bool inside = cone_distance(k, probe.x, s.point) <= probe.r * (1.0 + 1e-9);
    if (!(s.residual <= kPreimageResidual && inside)) {
      ++out.failures;
      if (stop_early) return out;
    } else {
      out.max_residual = std::max(out.max_residual, s.residual);
    }
  }
  return out;
}

}  // namespace

OpennessReport openness_estimate(const ConeSpace& k, const ConePoint& p, const std::vector<ConePoint>& a_list,
                                 const ConePoint& b, double eps, double delta, const std::vector<double>& radii,
                                 const OpennessOptions& opt) {
  if (radii.empty()) throw InputError("openness needs at least one radius");
  for (double r : radii) {
    if (!(r > 0.0)) throw InputError("openness radii must be positive");
  }
  const MarginReport at_p = check_map_at_point(k, p, a_list, b, eps, delta);
  if (!at_p.verdict) throw InputError("map is not (eps, delta)-noncritical at p");

  OpennessReport report;
  report.radii = radii;
  const ConeMap f = distance_map(k, a_list);
  const double r_max = *std::max_element(radii.begin(), radii.end());
  const double r_min = *std::min_element(radii.begin(), radii.end());
  std::mt19937_64 rng(opt.seed);
  std::vector<ConePoint> xs{k.normalize(p)};
  while (static_cast<int>(xs.size()) < opt.samples) xs.push_back(sample_ball(k, p, r_max, rng));
  report.samples = static_cast<int>(xs.size());

  std::vector<Probe> probes;
  for (double r : radii) {
    for (const auto& x : xs) probes.push_back({x, r, f(x)});
  }
  const int n = static_cast<int>(probes.size());
  const int dim = static_cast<int>(a_list.size());

  auto passes = [&](double c) {
    std::vector<ProbeOutcome> outcomes(static_cast<std::size_t>(n));
    parallel_for(n, [&](int i) {
      outcomes[static_cast<std::size_t>(i)] =
          run_probe(k, f, probes[static_cast<std::size_t>(i)], c, opt.bisection_targets, 0.0, opt.seed + i, true);
    });
    return std::all_of(outcomes.begin(), outcomes.end(), [](const ProbeOutcome& o) { return o.failures == 0; });
  };

  double lo = 0.0;
  double hi = std::sqrt(static_cast<double>(dim));
  if (passes(hi)) {
    lo = hi;
  } else {
    for (int step = 0; step < opt.bisection_steps; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (passes(mid)) lo = mid; else hi = mid;
    }
  }
  report.c_emp = lo;
  report.verify_c = 0.5 * lo;

  const int per_probe = std::max(1, (opt.verify_targets + n - 1) / n);
  std::vector<ProbeOutcome> outcomes(static_cast<std::size_t>(n));
  parallel_for(n, [&](int i) {
    outcomes[static_cast<std::size_t>(i)] = run_probe(k, f, probes[static_cast<std::size_t>(i)], report.verify_c,
                                                      per_probe, 0.5, opt.seed + 7919 + i, false);
  });
  for (const auto& o : outcomes) {
    report.targets_checked += o.checked;
    report.inclusion_failures += o.failures;
    report.max_residual = std::max(report.max_residual, o.max_residual);
  }

  const int dim_tp = space_of_directions(k, p).dimension() + 1;
  report.k_equals_dim = dim == dim_tp;
  if (report.k_equals_dim) {
    report.bilip_min = kInf;
    for (int i = 0; i < opt.pairs; ++i) {
      const ConePoint x = sample_ball(k, p, r_min, rng);
      const ConePoint y = sample_ball(k, p, r_min, rng);
      const double d = cone_distance(k, x, y);
      if (d <= 1e-9) continue;
      const Eigen::VectorXd diff = f(x) - f(y);
      const double ratio = diff.norm() / d;
      report.bilip_min = std::min(report.bilip_min, ratio);
      report.bilip_max = std::max(report.bilip_max, ratio);
      if (diff.cwiseAbs().maxCoeff() <= 1e-9) report.injective = false;
      ++report.pairs;
    }
  }
  return report;
}

namespace {

MarginReport best_extended_report(const ConeSpace& k, const ConePoint& x, const FiberSpec& spec) {
  const DirectionModel model = space_of_directions(k, x);
  std::vector<std::vector<GraphPoint>> xis;
  for (const auto& a : spec.a_list) xis.push_back(direction_at(k, model, x, a));
  const auto p_dirs = direction_at(k, model, x, spec.p);
  xis.push_back(p_dirs);

  std::vector<GraphPoint> etas = direction_at(k, model, x, spec.b);
  if (model.kind != DirectionKind::discrete_pi) {
    // Slide the old regular direction toward an antipode of p'.
    const SphericalGraph& g = model.graph;
    const auto starts = etas;
    for (const auto& q : antipode_set(g, p_dirs.front()).representatives(g)) {
      for (const auto& e : starts) {
        if (e == q) continue;
        const auto paths = geodesics(g, e, q, kPi);
        if (paths.empty()) continue;
        constexpr int kSteps = 32;
        for (int j = 1; j <= kSteps; ++j) etas.push_back(paths.front().at(g, paths.front().length * j / kSteps));
      }
    }
  }
  std::vector<GraphPoint> firsts;
  for (const auto& s : xis) firsts.push_back(s.front());
  etas.push_back(search_regular_direction(model, firsts).eta);

  MarginReport best;
  best.eps_margin = -kInf;
  for (const auto& eta : etas) {
    MarginReport r = check_direction_sets(model, xis, {eta}, spec.eps, spec.delta);
    if (r.eps_margin > best.eps_margin) best = r;
  }
  return best;
}

}  // namespace

std::vector<FiberSphereRow> fiber_sphere_check(const ConeSpace& k, const FiberSpec& spec,
                                               const std::vector<double>& radii, double h) {
  const ConePoint p = k.normalize(spec.p);
  const DirectionModel model_p = space_of_directions(k, p);
  if (static_cast<int>(spec.a_list.size()) >= model_p.dimension() + 1) {
    throw InputError("k = dim T_p: the fiber sphere is empty near p");
  }
  std::vector<ConePoint> extended = spec.a_list;
  extended.push_back(p);
  const ConeMap g = distance_map(k, extended);
  Eigen::VectorXd target(static_cast<Eigen::Index>(extended.size()));
  for (std::size_t i = 0; i < spec.a_list.size(); ++i) {
    target(static_cast<Eigen::Index>(i)) = cone_distance(k, spec.a_list[i], p);
  }

  std::vector<FiberSphereRow> rows;
  for (double r : radii) {
    if (!(r > 0.0)) throw InputError("fiber sphere radii must be positive");
    target(target.size() - 1) = r;
    std::vector<ConePoint> seeds;
    const double total = model_p.graph.total_length();
    constexpr int kRing = 32;
    for (int j = 0; j < kRing; ++j) {
      seeds.push_back(exp_point(k, p, model_p, point_at_arclength(model_p.graph, total * (j + 0.5) / kRing), r));
    }
    const double r_ret = std::min(r, spec.rho * spec.delta * (1.0 - 1e-9));
    const Retraction ret(k, spec, r_ret, std::nullopt, h);
    for (const auto& y : ret.sample_fiber(r_ret, 16).points) seeds.push_back(y);

    std::vector<ConePoint> found;
    for (const auto& seed : seeds) {
      const SolveResult s = solve_preimage(k, g, target, seed, p, 2.0 * r);
      if (!(s.residual <= kTau)) continue;
      const bool fresh = std::none_of(found.begin(), found.end(), [&](const ConePoint& q) {
        return cone_distance(k, q, s.point) <= 1e-6;
      });
      if (fresh) found.push_back(s.point);
    }
    if (found.empty()) throw InputError("no fiber point found at the requested radius");

    FiberSphereRow row;
    row.r = r;
    row.points = static_cast<int>(found.size());
    row.delta_margin = -kInf;
    row.eps_margin = kInf;
    row.verdict = true;
    for (const auto& x : found) {
      const MarginReport rep = best_extended_report(k, x, spec);
      if (rep.delta_margin > row.delta_margin) {
        row.delta_margin = rep.delta_margin;
        row.witness = x;
      }
      row.eps_margin = std::min(row.eps_margin, rep.eps_margin);
      row.verdict = row.verdict && rep.verdict;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> theta_grid(double theta_min, double theta_max, double step) {
  if (!(step > 0.0) || !(theta_max >= theta_min)) throw InputError("theta grid needs step > 0 and max >= min");
  if (theta_min < 0.0 || theta_max > 3.5 + 1e-9) throw InputError("theta grid must lie in [0, 3.5]");
  const int n = static_cast<int>(std::floor((theta_max - theta_min) / step + 1e-9));
  std::vector<double> out;
  for (int i = 0; i <= n; ++i) out.push_back(theta_min + i * step);
  return out;
}

std::vector<SweepRow> example14_sweep(const std::vector<double>& thetas, int k) {
  if (k != 1 && k != 2) throw InputError("example14 sweep supports k = 1 or 2");
  std::vector<SweepRow> rows(thetas.size());
  parallel_for(static_cast<int>(thetas.size()), [&](int i) {
    const double theta = thetas[static_cast<std::size_t>(i)];
    if (theta < 0.0 || theta > 3.5 + 1e-9) throw InputError("theta must lie in [0, 3.5]");
    const SphericalGraph g = SphericalGraph::circle(2.0 * kPi + theta);
    const DirectionModel model = DirectionModel::of_graph(g);
    const GraphPoint xi1 = GraphPoint::at_vertex(0);
    SweepRow row;
    row.theta = theta;
    row.k = k;
    row.xi1 = xi1;
    if (k == 1) {
      const RegularDirection rd = search_regular_direction(model, {xi1});
      row.best_margin = rd.margin;
      row.eta = rd.eta;
    } else {
      const AntipodeSet ant = antipode_set(g, xi1);
      std::vector<GraphPoint> candidates;
      for (int e = 0; e < g.num_edges(); ++e) {
        const PLFunction prof = antipodal_profile(g, ant, e);
        for (const auto& iv : prof.sublevel(kHalfPi, 0.0)) {
          candidates.push_back(g.normalize(GraphPoint::on_edge(e, iv.lo)));
          candidates.push_back(g.normalize(GraphPoint::on_edge(e, iv.hi)));
        }
        for (const auto& knot : prof.knots()) candidates.push_back(g.normalize(GraphPoint::on_edge(e, knot.t)));
      }
      candidates.push_back(point_at_arclength(g, 0.5 * g.total_length()));
      row.best_margin = -kInf;
      for (const auto& xi2 : candidates) {
        if (xi2 == xi1) continue;
        if (antipodal_distance(g, xi1, xi2).value > kHalfPi + 1e-12) continue;
        const RegularDirection rd = search_regular_direction(model, {xi1, xi2});
        if (rd.margin > row.best_margin) {
          row.best_margin = rd.margin;
          row.xi2 = xi2;
          row.eta = rd.eta;
        }
      }
    }
    rows[static_cast<std::size_t>(i)] = row;
  });
  return rows;
}

namespace {

std::string circle_position(const SphericalGraph& g, const GraphPoint& x) {
  const auto loc = g.to_input(x);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", loc.is_vertex ? 0.0 : loc.offset);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "theta,k,best_margin,xi1,xi2,eta\n";
  char buf[128];
  for (const auto& row : rows) {
    const SphericalGraph g = SphericalGraph::circle(2.0 * kPi + row.theta);
    const bool feasible = std::isfinite(row.best_margin);
    std::snprintf(buf, sizeof buf, "%.12g,%d,", row.theta, row.k);
    out << buf;
    if (feasible) {
      std::snprintf(buf, sizeof buf, "%.12g", row.best_margin);
      out << buf;
    } else {
      out << "-inf";
    }
    out << ',' << circle_position(g, row.xi1) << ',';
    if (row.k == 2 && feasible) out << circle_position(g, row.xi2);
    out << ',';
    if (feasible) out << circle_position(g, row.eta);
    out << '\n';
  }
}

SphereMapResult sphere_map(const SphericalGraph& circle, const std::vector<GraphPoint>& xis,
                           const GraphPoint& eta, double eps, double delta, double resolution) {
  if (std::isnan(circle.circle_length())) throw InputError("sphere map needs a circle direction space");
  if (xis.size() != 2) throw InputError("sphere map on a circle needs exactly two xi");
  if (!(resolution > 0.0 && resolution < 0.1)) throw InputError("resolution must lie in (0, 0.1)");
  const SphericalGraph g = circle.with_metric_mode(MetricMode::pi_truncated);
  const DirectionModel model = DirectionModel::of_graph(g);
  std::vector<GraphPoint> pts;
  for (const auto& x : xis) pts.push_back(g.normalize(x));
  const GraphPoint eta_n = g.normalize(eta);

  SphereMapResult res;
  res.hypotheses = check_collection(model, Collection{pts, eta_n}, eps, delta);
  if (!res.hypotheses.verdict) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "hypotheses fail: delta_margin %.6g (needs < %.6g), eps_margin %.6g (needs > %.6g)",
                  res.hypotheses.delta_margin, delta, res.hypotheses.eps_margin, eps);
    throw InputError(buf);
  }

  const double len = g.circle_length();
  const int n = std::max(8, static_cast<int>(std::ceil(len / resolution)));
  const double step = len / n;
  const DistanceField d1(g, pts[0]);
  const DistanceField d2(g, pts[1]);
  std::vector<Eigen::Vector2d> values(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const GraphPoint x = g.from_input(0, j * step);
    Eigen::Vector2d v(-std::cos(std::min(d1.to(x), kPi)), -std::cos(std::min(d2.to(x), kPi)));
    if (v.norm() < 1e-12) throw ConsistencyError("f vanishes on the direction space");
    values[static_cast<std::size_t>(j)] = v.normalized();
  }

  auto chord = [&](double s, double t) {
    double d = std::fmod(std::abs(s - t), len);
    d = std::min({d, len - d, kPi});
    return 2.0 * std::sin(0.5 * d);
  };
  auto note_pair = [&](int i, int j) {
    const double dom = chord(i * step, j * step);
    const double img = (values[static_cast<std::size_t>(i)] - values[static_cast<std::size_t>(j)]).norm();
    res.lip = std::max(res.lip, img / dom);
    res.lip_inverse = std::max(res.lip_inverse, img > 0.0 ? dom / img : kInf);
    return img / dom;
  };

  double total = 0.0;
  int positive = 0, negative = 0;
  for (int j = 0; j < n; ++j) {
    const int next = (j + 1) % n;
    const auto& a = values[static_cast<std::size_t>(j)];
    const auto& b = values[static_cast<std::size_t>(next)];
    const double inc = std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    total += inc;
    if (inc > 0.0) ++positive;
    if (inc < 0.0) ++negative;
    res.table.push_back({j * step, a.x(), a.y(), note_pair(j, next)});
  }
  constexpr int kCoarse = 256;
  const int stride = std::max(1, n / kCoarse);
  for (int i = 0; i < n; i += stride) {
    for (int j = i + stride; j < n; j += stride) note_pair(i, j);
  }
  res.distortion = res.lip * res.lip_inverse;
  res.winding = static_cast<int>(std::lround(total / (2.0 * kPi)));
  res.monotone = positive == 0 || negative == 0;
  res.bijective = std::abs(res.winding) == 1 && res.monotone;

  std::vector<GraphPoint> marks = pts;
  marks.push_back(eta_n);
  std::vector<DistanceField> fields;
  for (const auto& m : marks) fields.emplace_back(g, m);
  for (int e = 0; e < g.num_edges(); ++e) {
    PLFunction prof = fields[0].profile(e);
    for (std::size_t i = 1; i < fields.size(); ++i) prof = pl_min(prof, fields[i].profile(e));
    res.density = std::max(res.density, prof.truncated(kPi).argmax().v);
  }
  res.density_slack = res.density - kHalfPi;
  return res;
}

void write_sphere_map_csv(std::ostream& out, const SphereMapResult& result) {
  out << "x,ftilde_1,ftilde_2,local_distortion\n";
  char buf[160];
  for (const auto& row : result.table) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", row.x, row.f1, row.f2, row.local_distortion);
    out << buf;
  }
}

}  // namespace gcba
