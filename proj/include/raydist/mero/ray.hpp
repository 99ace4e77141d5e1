#pragma once

#include "raydist/core.hpp"
#include "raydist/mero/rational.hpp"

namespace raydist::mero {

/// A ray from the origin at angle theta, normalized to (-pi, pi].
struct RaySpec {
  double theta = 0.0;

  RaySpec() = default;
  explicit RaySpec(double angle) : theta(wrap_angle(angle)) {}

  cplx direction() const { return unit_phase(theta); }
};

/// Q(z) = e^{3 i theta} z R(z^3) as an explicit rational map. R must be real
/// with 0 < R(inf) < inf; common factors of z are cancelled.
RationalMap build_q(const RaySpec& ray, const RationalMap& R);

}  // namespace raydist::mero
