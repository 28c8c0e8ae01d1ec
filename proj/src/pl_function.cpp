#include "gcba/pl_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gcba {
namespace {

constexpr double kKnotMerge = 1e-14;

std::vector<double> normalized_abscissae(double length, std::vector<double> ts) {
  ts.push_back(0.0);
  ts.push_back(length);
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) {
    if (!std::isfinite(t)) continue;
    if (t < 0.0 || t > length) continue;
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  std::vector<double> dedup;
  dedup.reserve(out.size());
  for (double t : out) {
    if (dedup.empty() || t - dedup.back() > kKnotMerge) dedup.push_back(t);
  }
  // Keep the exact right endpoint.
  if (!dedup.empty()) dedup.back() = length;
  if (dedup.size() == 1 && length > 0.0) dedup.push_back(length);
  return dedup;
}

std::vector<double> merged_abscissae(const PLFunction& f, const PLFunction& g) {
  std::vector<double> ts;
  ts.reserve(f.knots().size() + g.knots().size());
  for (const auto& k : f.knots()) ts.push_back(k.t);
  for (const auto& k : g.knots()) ts.push_back(k.t);
  return normalized_abscissae(f.length(), std::move(ts));
}

// Adds crossing points of f and g between consecutive abscissae.
std::vector<double> with_crossings(const PLFunction& f, const PLFunction& g,
                                   std::vector<double> ts) {
  std::vector<double> extra;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double d0 = f(ts[i]) - g(ts[i]);
    const double d1 = f(ts[i + 1]) - g(ts[i + 1]);
    if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
      extra.push_back(ts[i] + (ts[i + 1] - ts[i]) * d0 / (d0 - d1));
    }
  }
  ts.insert(ts.end(), extra.begin(), extra.end());
  return normalized_abscissae(f.length(), std::move(ts));
}

template <class Op>
PLFunction combine(const PLFunction& f, const PLFunction& g, bool crossings, Op op) {
  auto ts = merged_abscissae(f, g);
  if (crossings) ts = with_crossings(f, g, std::move(ts));
  return PLFunction::sample(f.length(), ts, [&](double t) { return op(f(t), g(t)); });
}

}  // namespace

bool line_crossing(double a1, double s1, double a2, double s2, double& t) {
  if (s1 == s2) return false;
  t = (a2 - a1) / (s1 - s2);
  return true;
}

PLFunction PLFunction::sample(double length, std::vector<double> knots,
                              const std::function<double(double)>& f) {
  PLFunction out;
  out.length_ = length;
  for (double t : normalized_abscissae(length, std::move(knots))) {
    out.knots_.push_back({t, f(t)});
  }
  return out;
}

PLFunction PLFunction::constant(double length, double value) {
  return sample(length, {}, [value](double) { return value; });
}

double PLFunction::operator()(double t) const {
  if (knots_.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (t <= knots_.front().t) return knots_.front().v;
  if (t >= knots_.back().t) return knots_.back().v;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double x, const Knot& k) { return x < k.t; });
  const Knot& b = *it;
  const Knot& a = *(it - 1);
  if (b.t == a.t) return a.v;
  const double w = (t - a.t) / (b.t - a.t);
  return a.v + w * (b.v - a.v);
}

PLFunction PLFunction::truncated(double cap) const {
  return pl_min(*this, constant(length_, cap));
}

PLFunction PLFunction::shifted(double c) const {
  PLFunction out = *this;
  for (auto& k : out.knots_) k.v += c;
  return out;
}

PLFunction PLFunction::scaled(double c) const {
  PLFunction out = *this;
  for (auto& k : out.knots_) k.v *= c;
  return out;
}

PLFunction pl_min(const PLFunction& f, const PLFunction& g) {
  return combine(f, g, true, [](double a, double b) { return std::min(a, b); });
}

PLFunction pl_max(const PLFunction& f, const PLFunction& g) {
  return combine(f, g, true, [](double a, double b) { return std::max(a, b); });
}

PLFunction pl_sum(const PLFunction& f, const PLFunction& g) {
  return combine(f, g, false, [](double a, double b) { return a + b; });
}

std::vector<Interval> PLFunction::superlevel(double c, double tol) const {
  std::vector<Interval> out;
  const double level = c - tol;
  auto push = [&out](double lo, double hi) {
    if (!out.empty() && lo - out.back().hi <= kKnotMerge) {
      out.back().hi = std::max(out.back().hi, hi);
    } else {
      out.push_back({lo, hi});
    }
  };
  if (knots_.size() == 1) {
    if (knots_[0].v >= level) push(knots_[0].t, knots_[0].t);
    return out;
  }
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const Knot& a = knots_[i];
    const Knot& b = knots_[i + 1];
    const bool ain = a.v >= level;
    const bool bin = b.v >= level;
    if (ain && bin) {
      push(a.t, b.t);
    } else if (ain) {
      push(a.t, a.t + (b.t - a.t) * (a.v - level) / (a.v - b.v));
    } else if (bin) {
      push(a.t + (b.t - a.t) * (level - a.v) / (b.v - a.v), b.t);
    }
  }
  return out;
}

std::vector<Interval> PLFunction::sublevel(double c, double tol) const {
  return scaled(-1.0).superlevel(-c, tol);
}

std::vector<Interval> PLFunction::level(double c, double tol) const {
  std::vector<Interval> out;
  auto push = [&out](double lo, double hi) {
    if (!out.empty() && lo - out.back().hi <= kKnotMerge) {
      out.back().hi = std::max(out.back().hi, hi);
    } else {
      out.push_back({lo, hi});
    }
  };
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const Knot& a = knots_[i];
    const bool aon = std::abs(a.v - c) <= tol;
    if (aon) push(a.t, a.t);
    if (i + 1 == knots_.size()) break;
    const Knot& b = knots_[i + 1];
    const bool bon = std::abs(b.v - c) <= tol;
    if (aon && bon) {
      push(a.t, b.t);
    } else if (!aon && !bon && ((a.v < c) != (b.v < c))) {
      const double t = a.t + (b.t - a.t) * (c - a.v) / (b.v - a.v);
      push(t, t);
    }
  }
  return out;
}

PLFunction::Knot PLFunction::argmax(double lo, double hi) const {
  Knot best{lo, (*this)(lo)};
  for (const auto& k : knots_) {
    if (k.t > lo && k.t < hi && k.v > best.v) best = k;
  }
  const double vhi = (*this)(hi);
  if (vhi > best.v) best = {hi, vhi};
  return best;
}

}  // namespace gcba
