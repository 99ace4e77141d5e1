#pragma once

#include "raydist/core.hpp"

namespace raydist {

/// A straight segment or a circular arc, parametrized by t in [0, 1].
struct Segment {
  enum class Kind { line, arc };
  Kind kind = Kind::line;
  cplx from{}, to{};         // line
  cplx center{};             // arc
  double radius = 0.0;       // arc
  double theta0 = 0.0;       // arc, start angle
  double theta1 = 0.0;       // arc, end angle (signed span theta1 - theta0)

  static Segment line(cplx a, cplx b) { return Segment{Kind::line, a, b, {}, 0.0, 0.0, 0.0}; }
  static Segment arc(cplx center, double radius, double theta0, double theta1) {
    return Segment{Kind::arc, center + std::polar(radius, theta0), center + std::polar(radius, theta1),
                   center, radius, theta0, theta1};
  }

  cplx point(double t) const;
  /// dz/dt.
  cplx velocity(double t) const;
  double length() const;
  /// Smallest distance from p to the segment.
  double distance_to(cplx p) const;
};

}  // namespace raydist
