#include "raydist/geometry.hpp"

#include <algorithm>

namespace raydist {

cplx Segment::point(double t) const {
  if (kind == Kind::line) return from + t * (to - from);
  return center + std::polar(radius, theta0 + t * (theta1 - theta0));
}

cplx Segment::velocity(double t) const {
  if (kind == Kind::line) return to - from;
  const double span = theta1 - theta0;
  return imag_unit * span * std::polar(radius, theta0 + t * span);
}

double Segment::length() const {
  if (kind == Kind::line) return std::abs(to - from);
  return radius * std::abs(theta1 - theta0);
}

double Segment::distance_to(cplx p) const {
  if (kind == Kind::line) {
    const cplx d = to - from;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - from);
    const double t = std::clamp(((p - from) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (from + t * d));
  }
  // Nearest point on the circle if its angle is within the span, else an endpoint.
  const cplx rel = p - center;
  const double lo = std::min(theta0, theta1), hi = std::max(theta0, theta1);
  const double angle = std::arg(rel);
  const double shifted = lo + std::fmod(std::fmod(angle - lo, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
  if (shifted <= hi || hi - lo >= 2.0 * pi) return std::abs(std::abs(rel) - radius);
  return std::min(std::abs(p - from), std::abs(p - to));
}

}  // namespace raydist
