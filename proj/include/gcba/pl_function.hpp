#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gcba {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Continuous piecewise-linear function on [0, length], stored by its knots.
///
/// Between consecutive knots the function is affine. Every binary operation
/// merges the knot sets and inserts crossing points, so results stay exact
/// (up to floating point) without any sampling.
class PLFunction {
 public:
  struct Knot {
    double t;
    double v;
  };

  PLFunction() = default;

  /// Evaluates `f` at `knots` (plus 0 and `length`). The caller guarantees that
  /// `f` is affine between consecutive knots inside [0, length].
  static PLFunction sample(double length, std::vector<double> knots,
                           const std::function<double(double)>& f);
  static PLFunction constant(double length, double value);

  double length() const { return length_; }
  std::span<const Knot> knots() const { return knots_; }
  bool empty() const { return knots_.empty(); }

  double operator()(double t) const;

  PLFunction truncated(double cap) const;
  PLFunction shifted(double c) const;
  PLFunction scaled(double c) const;

  friend PLFunction pl_min(const PLFunction& f, const PLFunction& g);
  friend PLFunction pl_max(const PLFunction& f, const PLFunction& g);
  friend PLFunction pl_sum(const PLFunction& f, const PLFunction& g);

  /// Closed subintervals where f >= c - tol.
  std::vector<Interval> superlevel(double c, double tol) const;
  /// Closed subintervals where f <= c + tol.
  std::vector<Interval> sublevel(double c, double tol) const;
  /// Solutions of f = c. Flat pieces at level c come back as intervals,
  /// transversal crossings as degenerate intervals.
  std::vector<Interval> level(double c, double tol) const;

  /// Maximizer over [lo, hi]; ties go to the smallest t.
  Knot argmax(double lo, double hi) const;
  Knot argmax() const { return argmax(0.0, length_); }

 private:
  double length_ = 0.0;
  std::vector<Knot> knots_;
};

PLFunction pl_min(const PLFunction& f, const PLFunction& g);
PLFunction pl_max(const PLFunction& f, const PLFunction& g);
PLFunction pl_sum(const PLFunction& f, const PLFunction& g);

/// Crossing abscissa of the affine functions a1 + s1 t and a2 + s2 t; false
/// for parallel lines.
bool line_crossing(double a1, double s1, double a2, double s2, double& t);

}  // namespace gcba
