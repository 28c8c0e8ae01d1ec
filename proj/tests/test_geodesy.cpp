#include <cmath>
#include <random>

#include "doctest.h"
#include "gcba/geodesy.hpp"
#include "gcba/validation.hpp"
#include "support/oracles.hpp"

using namespace gcba;

namespace {

GraphPoint mid_arc(const SphericalGraph& g, int arc) { return g.from_input(arc, kHalfPi); }

}  // namespace

TEST_CASE("distances on circles and suspensions") {
  const SphericalGraph c = SphericalGraph::circle(2.0 * kPi + 0.5);
  CHECK(distance(c, c.from_input(0, 0.0), c.from_input(0, 4.0), false) == doctest::Approx(2.7832).epsilon(1e-4));
  const SphericalGraph s = SphericalGraph::suspension(3);
  CHECK(distance(s, GraphPoint::at_vertex(0), mid_arc(s, 0), false) == doctest::Approx(kHalfPi));
  CHECK(distance(s, mid_arc(s, 0), mid_arc(s, 1), false) == doctest::Approx(kPi));
}

TEST_CASE("geodesic enumeration") {
  const SphericalGraph round = SphericalGraph::circle(2.0 * kPi);
  CHECK(geodesics(round, round.from_input(0, 0.0), round.from_input(0, kPi), kPi).size() == 2);
  const SphericalGraph s = SphericalGraph::suspension(3);
  const auto paths = geodesics(s, mid_arc(s, 0), mid_arc(s, 1), kPi);
  REQUIRE(paths.size() == 2);
  for (const auto& p : paths) CHECK(p.length == doctest::Approx(kPi));
  const SphericalGraph c = SphericalGraph::circle(2.0 * kPi + 0.5);
  const auto one = geodesics(c, c.from_input(0, 0.0), c.from_input(0, 2.8), kPi);
  REQUIRE(one.size() == 1);
  CHECK(one[0].length == doctest::Approx(2.8));
  CHECK_THROWS_AS(geodesics(c, c.from_input(0, 0.0), c.from_input(0, 1.0), 7.0), InputError);
}

TEST_CASE("paths are consistent with their length and endpoints") {
  const SphericalGraph s = SphericalGraph::suspension(3);
  const GraphPoint x = s.from_input(0, 0.4);
  const GraphPoint y = s.from_input(2, 2.0);
  for (const auto& p : geodesics(s, x, y, 2.0 * kPi)) {
    double sum = 0.0;
    for (const auto& t : p.traversals) sum += t.length();
    CHECK(sum == doctest::Approx(p.length));
    CHECK(distance(s, p.end(s), y, false) <= 1e-12);
    CHECK(distance(s, p.at(s, 0.0), x, false) <= 1e-12);
  }
}

TEST_CASE("extension and walks keep going without backtracking") {
  const SphericalGraph round = SphericalGraph::circle(2.0 * kPi);
  const GraphPoint x = round.from_input(0, 0.2);
  const auto p = geodesics(round, x, round.from_input(0, 1.2), kPi).front();
  const GeodesicPath longer = extend(round, p, 1.5);
  CHECK(longer.length == doctest::Approx(2.5));
  CHECK(distance(round, longer.end(round), round.from_input(0, 2.7), false) <= 1e-12);
  const GeodesicPath w = walk(round, x, round.directions_at(x)[1], kPi);
  CHECK(distance(round, w.end(round), x, false) == doctest::Approx(kPi));
}

TEST_CASE("antipode sets") {
  const SphericalGraph round = SphericalGraph::circle(2.0 * kPi);
  const AntipodeSet a = antipode_set(round, round.from_input(0, 0.0));
  const auto reps = a.representatives(round);
  REQUIRE_FALSE(reps.empty());
  for (const auto& q : reps) CHECK(distance(round, q, round.from_input(0, kPi), false) <= 1e-9);

  const SphericalGraph wide = SphericalGraph::circle(2.0 * kPi + 0.5);
  const AntipodeSet b = antipode_set(wide, wide.from_input(0, 0.0));
  double covered = 0.0;
  for (const auto& s : b.segments) covered += s.hi - s.lo;
  CHECK(covered == doctest::Approx(0.5));
  for (const auto& q : graph_net(wide, 0.01)) {
    const bool far = distance(wide, wide.from_input(0, 0.0), q, false) >= kPi + 1e-9;
    if (!far) continue;
    bool inside = false;
    for (const auto& s : b.segments) {
      inside = inside || (!q.is_vertex() && q.edge == s.edge && q.offset >= s.lo - 1e-12 && q.offset <= s.hi + 1e-12);
    }
    CHECK(inside);
  }

  const SphericalGraph s3 = SphericalGraph::suspension(3);
  const AntipodeSet c = antipode_set(s3, mid_arc(s3, 0));
  const auto pts = c.representatives(s3);
  REQUIRE(pts.size() == 2);
  CHECK(distance(s3, pts[0], mid_arc(s3, 1), false) <= 1e-12);
  CHECK(distance(s3, pts[1], mid_arc(s3, 2), false) <= 1e-12);
}

TEST_CASE("antipodal distance examples") {
  const SphericalGraph round = SphericalGraph::circle(2.0 * kPi);
  CHECK(antipodal_distance(round, round.from_input(0, 0.0), round.from_input(0, 1.0)).value ==
        doctest::Approx(kPi - 1.0));
  const SphericalGraph wide = SphericalGraph::circle(2.0 * kPi + 0.5);
  const auto ad = antipodal_distance(wide, wide.from_input(0, 0.0), wide.from_input(0, 2.8));
  CHECK(ad.value == doctest::Approx(0.8416).epsilon(1e-4));
  CHECK(ad.method_gap <= 1e-9);
  CHECK(antipodal_distance(wide, wide.from_input(0, 1.0), wide.from_input(0, 1.0)).value == doctest::Approx(kPi));
  CHECK_THROWS_AS(antipodal_distance(round.with_metric_mode(MetricMode::intrinsic), round.from_input(0, 0.0),
                                     round.from_input(0, 1.0)),
                  InputError);
}

TEST_CASE("antipodal distance matches the circle closed form and a sampled sup") {
  std::mt19937_64 rng(21);
  for (double theta : {0.0, 0.5, 1.3, 3.3}) {
    const SphericalGraph g = SphericalGraph::circle(2.0 * kPi + theta);
    for (int i = 0; i < 40; ++i) {
      const GraphPoint xi = random_point(g, rng);
      const GraphPoint eta = random_point(g, rng);
      const double d = distance(g, xi, eta, false);
      CHECK(antipodal_distance(g, xi, eta).value == doctest::Approx(testing::circle_antipodal(theta, d)).epsilon(1e-12));
    }
  }
  for (int trial = 0; trial < 6; ++trial) {
    const SphericalGraph g = testing::random_spherical_graph(rng, 4, 2);
    for (int i = 0; i < 5; ++i) {
      const GraphPoint xi = random_point(g, rng);
      const GraphPoint eta = random_point(g, rng);
      const double exact = antipodal_distance(g, xi, eta).value;
      const double sampled = testing::sampled_antipodal(g, xi, eta, 1e-3);
      CHECK(sampled <= exact + 1e-9);
      CHECK(sampled >= exact - 2e-3);
    }
  }
}

TEST_CASE("antipodal distance properties on random graphs") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const SphericalGraph g = testing::random_spherical_graph(rng, 3 + trial % 5, trial % 4);
    for (int i = 0; i < 20; ++i) {
      const GraphPoint xi = random_point(g, rng);
      const GraphPoint eta = random_point(g, rng);
      const auto ad = antipodal_distance(g, xi, eta);
      CHECK(ad.method_gap <= 1e-9);
      CHECK(ad.value == doctest::Approx(antipodal_distance(g, eta, xi).value).epsilon(1e-9));
      CHECK(ad.value >= kPi - distance(g, xi, eta, true) - 1e-9);
      CHECK(ad.value <= kPi + 1e-12);
      for (const auto& z : antipode_set(g, xi).representatives(g)) {
        CHECK(distance(g, xi, z, false) >= kPi - 1e-9);
        CHECK(ad.value >= distance(g, z, eta, true) - 1e-9);
      }
    }
  }
}

TEST_CASE("subdividing an edge leaves distances unchanged") {
  const SphericalGraph whole = SphericalGraph::from_edges(2, {{0, 1, 3.0}, {0, 1, 3.5}});
  const SphericalGraph split = SphericalGraph::from_edges(3, {{0, 2, 1.1}, {2, 1, 1.9}, {0, 1, 3.5}});
  for (double s = 0.0; s <= 3.0; s += 0.25) {
    for (double t = 0.0; t <= 3.5; t += 0.25) {
      const GraphPoint a = whole.from_input(0, s);
      const GraphPoint b = whole.from_input(1, t);
      const GraphPoint a2 = s <= 1.1 ? split.from_input(0, s) : split.from_input(1, s - 1.1);
      const GraphPoint b2 = split.from_input(2, t);
      CHECK(std::abs(distance(whole, a, b, false) - distance(split, a2, b2, false)) <= 1e-12);
    }
  }
}

TEST_CASE("directions of shortest paths") {
  const SphericalGraph round = SphericalGraph::circle(2.0 * kPi);
  const GraphPoint x = round.from_input(0, 1.0);
  CHECK(direction_space_graph(round, x).size == 2);
  CHECK(direction_of(round, x, round.from_input(0, 2.0)).size() == 1);
  CHECK(direction_of(round, x, round.from_input(0, 1.0 + kPi)).size() == 2);
  const SphericalGraph s = SphericalGraph::suspension(3);
  CHECK(direction_of(s, GraphPoint::at_vertex(0), GraphPoint::at_vertex(1)).size() == 3);
  CHECK_THROWS_AS(direction_of(round, x, x), InputError);
  const DiscretePiSet pair = direction_space_graph(round, x);
  CHECK(pair.distance(0, 1) == kPi);
  CHECK(pair.antipodal_distance(0, 1) == 0.0);
}
