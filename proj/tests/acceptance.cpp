// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "gcba/analysis.hpp"
#include "gcba/geodesy.hpp"
#include "gcba/validation.hpp"
#include "support/oracles.hpp"

using namespace gcba;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Midpoint of the first sign change of best_margin from positive to not.
double boundary(const std::vector<SweepRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i - 1].best_margin > 0.0 && !(rows[i].best_margin > 0.0)) {
      return 0.5 * (rows[i - 1].theta + rows[i].theta);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Outcome sweep_thresholds() {
  const double b2 = boundary(example14_sweep(theta_grid(0.0, 1.2, 0.01), 2));
  const double b1 = boundary(example14_sweep(theta_grid(0.0, 3.5, 0.01), 1));
  const bool ok = std::abs(b2 - kPi / 4.0) <= 0.02 && std::abs(b1 - kPi) <= 0.02;
  return {ok, fmt("k=2 boundary %.4f (pi/4 = %.4f), k=1 boundary %.4f (pi = %.4f)", b2, kPi / 4.0, b1, kPi)};
}

Outcome duality() {
  std::mt19937_64 rng(101);
  std::vector<SphericalGraph> graphs{SphericalGraph::circle(2.0 * kPi), SphericalGraph::circle(2.0 * kPi + 0.5),
                                     SphericalGraph::suspension(3), SphericalGraph::suspension(5)};
  for (int i = 0; graphs.size() < 24; ++i) {
    SphericalGraph g = testing::random_spherical_graph(rng, 3 + i % 5, i % 4);
    if (validate_space(g).passed()) graphs.push_back(std::move(g));
  }
  double worst = 0.0;
  long pairs = 0;
  for (const auto& g : graphs) {
    for (int i = 0; i < 1000; ++i) {
      const GraphPoint xi = random_point(g, rng);
      const GraphPoint eta = random_point(g, rng);
      worst = std::max(worst, antipodal_distance(g, xi, eta).method_gap);
      ++pairs;
    }
  }
  return {worst <= 1e-9, fmt("max method_gap %.3g over %.0f pairs on %.0f spaces", worst, double(pairs),
                             double(graphs.size()))};
}

Outcome plane_oracle() {
  const testing::Plane plane;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  double dist_err = 0.0, mid_err = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Eigen::Vector2d u(coord(rng), coord(rng)), v(coord(rng), coord(rng));
    const ConePoint pu = plane.at(u.x(), u.y()), pv = plane.at(v.x(), v.y());
    dist_err = std::max(dist_err, std::abs(cone_distance(plane.k, pu, pv) - (u - v).norm()));
    const ConeGeodesic g = cone_geodesic(plane.k, pu, pv);
    mid_err = std::max(mid_err, (plane.xy(g.at(plane.k, 0.5 * g.length)) - 0.5 * (u + v)).norm());
  }
  const FiberSpec spec{ConePoint::apex(), {plane.at(3.0, 0.0)}, plane.at(-2.0, 0.0), 0.3, 0.4, 1.5};
  const Retraction r(plane.k, spec, 0.55);
  double ret_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ConePoint x = sample_ball(plane.k, ConePoint::apex(), 0.55, rng);
    const auto expect = testing::plane_retract(plane.xy(x), {3.0, 0.0}, {-2.0, 0.0});
    ret_err = std::max(ret_err, (plane.xy(r.retract(x)) - expect.point).norm());
  }
  const bool ok = dist_err <= 1e-9 && mid_err <= 1e-9 && ret_err <= 1e-8;
  return {ok, fmt("distance err %.3g, midpoint err %.3g, retraction err %.3g", dist_err, mid_err, ret_err)};
}

Outcome find_v_postconditions() {
  std::mt19937_64 rng(303);
  int tested = 0, bad = 0;
  const double margin = 0.05;
  for (int attempt = 0; attempt < 20000 && tested < 100; ++attempt) {
    const SphericalGraph g = testing::random_spherical_graph(rng, 3 + attempt % 4, attempt % 3);
    const int k = 1 + attempt % 2;
    const auto coll = testing::random_noncritical(g, rng, k, margin, margin);
    if (!coll) continue;
    const FindVResult v = find_v(DirectionModel::of_graph(g), *coll, margin, margin);
    bool ok = distance(g, v.v, coll->xis[0], true) <= kHalfPi - 0.01 &&
              distance(g, v.v, *coll->eta, true) >= kHalfPi + 0.01;
    for (std::size_t i = 1; i < coll->xis.size(); ++i) {
      ok = ok && std::abs(distance(g, v.v, coll->xis[i], true) - kHalfPi) <= 1e-9;
    }
    bad += ok ? 0 : 1;
    ++tested;
  }
  int too_many = 0;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const SphericalGraph g = testing::random_spherical_graph(rng, 3 + attempt % 4, attempt % 3);
    if (testing::random_noncritical(g, rng, 3, 0.0, 0.0)) ++too_many;
  }
  return {tested == 100 && bad == 0 && too_many == 0,
          fmt("%.0f collections, %.0f violations, %.0f collections with k > dim + 1", tested, bad, too_many)};
}

Outcome retraction_specs() {
  const testing::Plane plane;
  const ConeSpace wide(SphericalGraph::circle(2.0 * kPi + 0.5));
  const auto at = [&](double t, double r) { return ConePoint{wide.base().from_input(0, t), r}; };
  struct Case {
    const ConeSpace* k;
    FiberSpec spec;
    double r;
  };
  const std::vector<Case> cases{
      {&plane.k, {ConePoint::apex(), {plane.at(3.0, 0.0)}, plane.at(-2.0, 0.0), 0.3, 0.4, 1.5}, 0.55},
      {&wide, {ConePoint::apex(), {at(0.0, 1.0)}, at(4.45, 1.0), 0.15, 0.2, 0.5}, 0.05},
      {&wide, {at(1.0, 0.6), {at(1.2, 2.0)}, at(4.5, 1.0), 0.15, 0.2, 0.5}, 0.05},
  };
  std::mt19937_64 rng(404);
  double residual = 0.0, identity = 0.0, range = -1.0, monotone = -1.0, trace = 0.0, trace_range = -1.0;
  int identity_checks = 0;
  for (const Case& c : cases) {
    const Retraction ret(*c.k, c.spec, c.r);
    const ConePoint& p = ret.spec().p;
    const double bound = ret.constants().L * c.r;
    for (int i = 0; i < 400; ++i) {
      const ConePoint x = sample_ball(*c.k, p, c.r, rng);
      const ConePoint x1 = ret.r1(x).point;
      const ConePoint y = ret.r2(x1).point;
      residual = std::max(residual, ret.classify(y).residual);
      if (cone_distance(*c.k, p, y) < c.r) {
        identity = std::max(identity, cone_distance(*c.k, ret.retract(y), y));
        ++identity_checks;
      }
      range = std::max(range, cone_distance(*c.k, p, y) - bound);
      monotone = std::max(monotone, cone_distance(*c.k, p, y) - cone_distance(*c.k, p, x1));
    }
    for (const ConePoint& y : ret.sample_fiber(c.r, 16).points) {
      if (cone_distance(*c.k, p, y) >= c.r) continue;
      identity = std::max(identity, cone_distance(*c.k, ret.retract(y), y));
      ++identity_checks;
    }
    for (const TraceRow& row : ret.contract(8, 10)) {
      trace = std::max(trace, row.residual);
      trace_range = std::max(trace_range, row.distance_to_p - bound);
    }
  }
  const bool ok = identity_checks > 0 && residual <= 1e-6 && identity <= 1e-9 && range <= 1e-6 && monotone <= 1e-6 && trace <= 1e-6 &&
                  trace_range <= 1e-6;
  return {ok, fmt("residual %.3g, identity %.3g, range excess %.3g, r2 distance increase %.3g", residual, identity,
                  range, monotone) +
                  fmt(", trace residual %.3g, %.0f identity checks", trace, identity_checks)};
}

Outcome openness() {
  const ConeSpace wide(SphericalGraph::circle(2.0 * kPi + 0.5));
  const auto at = [&](double t, double r) { return ConePoint{wide.base().from_input(0, t), r}; };
  OpennessOptions opt;
  opt.verify_targets = 1000;
  opt.pairs = 10000;
  const OpennessReport o = openness_estimate(wide, ConePoint::apex(), {at(0.0, 1.0), at(2.2, 1.0)}, at(4.45, 1.0),
                                             0.15, 0.2, {0.05, 0.025}, opt);
  const bool ok = o.c_emp > 0.0 && o.inclusion_failures == 0 && o.targets_checked >= 1000 && o.k_equals_dim &&
                  o.pairs >= 10000 && o.injective;
  return {ok, fmt("c_emp %.4f, %.0f targets, %.0f inclusion failures", o.c_emp, o.targets_checked,
                  o.inclusion_failures) +
                  fmt(", %.0f pairs, bi-Lipschitz [%.4f, %.4f]", o.pairs, o.bilip_min, o.bilip_max) +
                  (o.injective ? ", injective" : ", NOT injective")};
}

Outcome fiber_sphere() {
  const testing::Plane plane;
  const FiberSpec spec{ConePoint::apex(), {plane.at(3.0, 0.0)}, plane.at(-2.0, 0.0), 0.3, 0.4, 1.5};
  const auto rows = fiber_sphere_check(plane.k, spec, {0.352, 0.4, 0.2, 0.1, 0.05, 0.025});
  bool ok = std::abs(rows[0].delta_margin - 0.059) <= 0.005;
  std::string seq;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ok = ok && rows[i].delta_margin > 0.0 && (i == 1 || rows[i].delta_margin < rows[i - 1].delta_margin);
    seq += fmt(" %.4f", rows[i].delta_margin);
  }
  return {ok, fmt("delta(0.352) = %.4f; delta at 0.4..0.025:", rows[0].delta_margin) + seq};
}

Outcome sphere_maps() {
  const SphericalGraph round = SphericalGraph::circle(2.0 * kPi);
  const SphereMapResult a = sphere_map(round, {round.from_input(0, 0.0), round.from_input(0, kHalfPi)},
                                       round.from_input(0, 1.25 * kPi), 0.7, 0.01);
  const SphericalGraph wide = SphericalGraph::circle(2.0 * kPi + 0.5);
  const SphereMapResult b = sphere_map(wide, {wide.from_input(0, 0.0), wide.from_input(0, 2.2)},
                                       wide.from_input(0, 4.45), 0.15, 0.2);
  const bool ok = std::abs(a.distortion - 1.0) <= 1e-6 && std::abs(a.winding) == 1 && b.bijective &&
                  std::isfinite(b.distortion) && b.density <= kHalfPi + 0.3;
  return {ok, fmt("round distortion %.9f winding %.0f; wide distortion %.4f density %.4f", a.distortion,
                  a.winding, b.distortion, b.density) +
                  (b.bijective ? " bijective" : " NOT bijective")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 60.0, sweep_thresholds}, {2, 10.0, duality},  {3, 10.0, plane_oracle}, {4, 30.0, find_v_postconditions},
      {5, 30.0, retraction_specs}, {6, 60.0, openness}, {7, 10.0, fiber_sphere}, {8, 10.0, sphere_maps},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs < c.limit_s;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d: %s [%.2fs, limit %.0fs]\n", pass ? "PASS" : "FAIL", c.id, o.detail.c_str(), secs,
                c.limit_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
