#include "raydist/odesolve/path.hpp"

#include <algorithm>
#include <limits>

namespace raydist::odesolve {

PathPlan::PathPlan(std::vector<Segment> segments) {
  for (const auto& s : segments) append(s);
}

PathPlan PathPlan::polyline(const std::vector<cplx>& vertices) {
  if (vertices.size() < 2) throw DomainError("polyline needs at least two vertices");
  PathPlan p;
  for (std::size_t i = 1; i < vertices.size(); ++i) p.append(Segment::line(vertices[i - 1], vertices[i]));
  return p;
}

PathPlan PathPlan::circle(cplx center, double radius, int pieces, double start) {
  if (!(radius > 0.0) || pieces < 1) throw DomainError("circle needs a positive radius and piece count");
  PathPlan p;
  const double step = 2.0 * pi / pieces;
  for (int k = 0; k < pieces; ++k) {
    p.segments_.push_back(Segment::arc(center, radius, start + k * step, start + (k + 1) * step));
  }
  // Close exactly: the last endpoint equals the first start point.
  p.segments_.back().to = p.segments_.front().from;
  return p;
}

PathPlan& PathPlan::append(const Segment& s) {
  if (!segments_.empty()) {
    const double gap = std::abs(segments_.back().to - s.from);
    const double scale = 1.0 + std::abs(s.from);
    if (gap > 1e-9 * scale) throw GeometryError("path segments do not join");
  }
  segments_.push_back(s);
  return *this;
}

PathPlan& PathPlan::append(const PathPlan& p) {
  for (const auto& s : p.segments_) append(s);
  return *this;
}

cplx PathPlan::start() const {
  if (segments_.empty()) throw DomainError("empty path");
  return segments_.front().from;
}

cplx PathPlan::end() const {
  if (segments_.empty()) throw DomainError("empty path");
  return segments_.back().to;
}

double PathPlan::length() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.length();
  return total;
}

bool PathPlan::closed(double tol) const {
  return !segments_.empty() && std::abs(end() - start()) <= tol * (1.0 + std::abs(start()));
}

double PathPlan::clearance(const std::vector<cplx>& singularities) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segments_)
    for (cplx p : singularities) best = std::min(best, s.distance_to(p));
  return best;
}

void PathPlan::require_clearance(const std::vector<cplx>& singularities, double min_distance) const {
  if (clearance(singularities) < min_distance) {
    throw GeometryError("path passes within " + std::to_string(min_distance) + " of a singularity");
  }
}

nlohmann::json PathPlan::to_json() const {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& s : segments_) {
    if (s.kind == Segment::Kind::line) {
      pieces.push_back({{"kind", "line"},
                        {"from", {s.from.real(), s.from.imag()}},
                        {"to", {s.to.real(), s.to.imag()}}});
    } else {
      pieces.push_back({{"kind", "arc"},
                        {"center", {s.center.real(), s.center.imag()}},
                        {"radius", s.radius},
                        {"theta0", s.theta0},
                        {"theta1", s.theta1}});
    }
  }
  return {{"segments", pieces.size()}, {"length", length()}, {"pieces", pieces}};
}

PathPlan route(cplx a, cplx b, const std::vector<cplx>& singularities, double clearance) {
  for (cplx p : singularities) {
    if (std::abs(p - a) < clearance || std::abs(p - b) < clearance) {
      throw GeometryError("path endpoint lies within the clearance radius of a singularity");
    }
  }
  const cplx d = b - a;
  const double len = std::abs(d);
  if (len == 0.0) return PathPlan({Segment::line(a, b)});
  const cplx u = d / len;

  struct Detour {
    double along;  // projection parameter of the singularity
    cplx point;
  };
  std::vector<Detour> hits;
  for (cplx p : singularities) {
    const cplx rel = (p - a) / u;  // frame with the segment on the positive real axis
    if (rel.real() > 0.0 && rel.real() < len && std::abs(rel.imag()) < clearance) hits.push_back({rel.real(), p});
  }
  std::sort(hits.begin(), hits.end(), [](const Detour& x, const Detour& y) { return x.along < y.along; });

  PathPlan path;
  cplx cursor = a;
  for (const auto& h : hits) {
    const cplx rel = (h.point - a) / u;
    const double offset = std::sqrt(clearance * clearance - rel.imag() * rel.imag());
    const cplx entry = a + u * (rel.real() - offset);
    const cplx exit = a + u * (rel.real() + offset);
    if (((entry - cursor) / u).real() < 0.0) {
      throw GeometryError("singularities too close together to route a path between them");
    }
    path.append(Segment::line(cursor, entry));
    // Go around on the side away from the singularity (left when it sits on the line).
    const double start = std::arg(entry - h.point);
    double span = wrap_angle(std::arg(exit - h.point) - start);
    const bool go_left = rel.imag() <= 0.0;
    if (go_left && span > 0.0) span -= 2.0 * pi;
    if (!go_left && span < 0.0) span += 2.0 * pi;
    Segment arc = Segment::arc(h.point, clearance, start, start + span);
    arc.from = entry;
    arc.to = exit;
    path.append(arc);
    cursor = exit;
  }
  path.append(Segment::line(cursor, b));
  return path;
}

}  // namespace raydist::odesolve
