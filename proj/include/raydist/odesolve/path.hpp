#pragma once

#include <vector>

#include <json.hpp>

#include "raydist/core.hpp"
#include "raydist/geometry.hpp"

namespace raydist::odesolve {

/// An ordered chain of segments. Consecutive segments must join.
class PathPlan {
 public:
  PathPlan() = default;
  explicit PathPlan(std::vector<Segment> segments);

  static PathPlan line(cplx a, cplx b) { return PathPlan({Segment::line(a, b)}); }
  static PathPlan polyline(const std::vector<cplx>& vertices);
  /// Counterclockwise circle starting and ending at center + radius e^{i start},
  /// split into `pieces` arcs.
  static PathPlan circle(cplx center, double radius, int pieces = 720, double start = 0.0);

  PathPlan& append(const Segment& s);
  PathPlan& append(const PathPlan& p);

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  cplx start() const;
  cplx end() const;
  double length() const;
  bool closed(double tol = 1e-12) const;

  /// Smallest distance from any segment to any of the points.
  double clearance(const std::vector<cplx>& singularities) const;
  /// Throws GeometryError when the path passes within `min_distance` of a
  /// singularity.
  void require_clearance(const std::vector<cplx>& singularities, double min_distance) const;

  nlohmann::json to_json() const;

 private:
  std::vector<Segment> segments_;
};

/// Straight path from a to b, detouring around every singularity that lies
/// within `clearance` of the segment along an arc of that radius. Throws
/// GeometryError if an endpoint is itself too close to a singularity.
PathPlan route(cplx a, cplx b, const std::vector<cplx>& singularities, double clearance);

}  // namespace raydist::odesolve
