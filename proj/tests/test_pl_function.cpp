#include <cmath>
#include <random>

#include "doctest.h"
#include "gcba/pl_function.hpp"

using gcba::PLFunction;

namespace {

PLFunction tent(double len, double peak) {
  return PLFunction::sample(len, {peak}, [&](double t) { return t <= peak ? t : 2.0 * peak - t; });
}

}  // namespace

TEST_CASE("sampled function interpolates between knots") {
  const PLFunction f = tent(4.0, 1.0);
  CHECK(f(0.5) == doctest::Approx(0.5));
  CHECK(f(1.0) == doctest::Approx(1.0));
  CHECK(f(3.0) == doctest::Approx(-1.0));
}

TEST_CASE("min of two lines inserts the crossing") {
  const PLFunction up = PLFunction::sample(2.0, {}, [](double t) { return t; });
  const PLFunction down = PLFunction::sample(2.0, {}, [](double t) { return 1.5 - t; });
  const PLFunction m = gcba::pl_min(up, down);
  CHECK(m.argmax().t == doctest::Approx(0.75));
  CHECK(m.argmax().v == doctest::Approx(0.75));
  const PLFunction s = gcba::pl_sum(up, down);
  CHECK(s(1.3) == doctest::Approx(1.5));
}

TEST_CASE("level sets are exact intervals") {
  const PLFunction f = tent(4.0, 2.0);
  const auto sup = f.superlevel(1.0, 0.0);
  REQUIRE(sup.size() == 1);
  CHECK(sup[0].lo == doctest::Approx(1.0));
  CHECK(sup[0].hi == doctest::Approx(3.0));
  const auto sub = f.sublevel(1.0, 0.0);
  REQUIRE(sub.size() == 2);
  const auto lvl = f.level(1.0, 1e-12);
  REQUIRE(lvl.size() == 2);
  CHECK(lvl[0].lo == doctest::Approx(1.0));
  CHECK(lvl[1].lo == doctest::Approx(3.0));
}

TEST_CASE("argmax ties go to the smallest parameter") {
  const PLFunction flat = PLFunction::constant(3.0, 2.0);
  CHECK(flat.argmax().t == 0.0);
  CHECK(flat.argmax(1.0, 2.0).t == doctest::Approx(1.0));
}

TEST_CASE("truncation caps the values") {
  const PLFunction f = tent(6.0, 3.0).truncated(2.0);
  CHECK(f(3.0) == doctest::Approx(2.0));
  CHECK(f(1.0) == doctest::Approx(1.0));
}

TEST_CASE("random envelopes agree with pointwise evaluation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a1 = u(rng), s1 = u(rng), a2 = u(rng), s2 = u(rng);
    const PLFunction f = PLFunction::sample(3.0, {}, [&](double t) { return a1 + s1 * t; });
    const PLFunction g = PLFunction::sample(3.0, {}, [&](double t) { return a2 + s2 * t; });
    const PLFunction lo = gcba::pl_min(f, g);
    const PLFunction hi = gcba::pl_max(f, g);
    for (double t = 0.0; t <= 3.0; t += 0.01) {
      CHECK(lo(t) == doctest::Approx(std::min(f(t), g(t))).epsilon(1e-12));
      CHECK(hi(t) == doctest::Approx(std::max(f(t), g(t))).epsilon(1e-12));
    }
  }
}
