#include "gcba/cone_space.hpp"

namespace gcba {

ConeSpace::ConeSpace(SphericalGraph base) : base_(std::move(base)) {
  if (!std::isnan(base_.circle_length())) theta_excess_ = base_.circle_length() - 2.0 * kPi;
}

ConePoint ConeSpace::normalize(const ConePoint& p) const {
  if (!(p.radius >= 0.0) || !std::isfinite(p.radius)) throw InputError("cone radius must be finite and nonnegative");
  if (p.is_apex()) return ConePoint::apex();
  return {base_.normalize(p.base), p.radius};
}

bool ConeSpace::same_point(const ConePoint& p, const ConePoint& q) const {
  const ConePoint a = normalize(p);
  const ConePoint b = normalize(q);
  if (a.is_apex() || b.is_apex()) return a.is_apex() && b.is_apex();
  return a.radius == b.radius && a.base == b.base;
}

void TinyBallSpec::check() const {
  if (!(radius > 0.0 && radius < 1.0)) throw InputError("tiny ball radius must lie in (0, 1)");
}

}  // namespace gcba
