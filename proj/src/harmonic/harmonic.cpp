#include "raydist/harmonic/harmonic.hpp"

#include <algorithm>
#include <cstdio>

#include "raydist/rng.hpp"

namespace raydist::harmonic {

namespace {

constexpr int kArcChords = 256;

nlohmann::json point_json(cplx z) { return {z.real(), z.imag()}; }
cplx point_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

// Signed change of arg(w - z) along the piece.
double winding_increment(const Segment& s, cplx z) {
  if (s.kind == Segment::Kind::line) return std::arg((s.to - z) / (s.from - z));
  double total = 0.0;
  cplx prev = s.from;
  for (int k = 1; k <= kArcChords; ++k) {
    const cplx next = s.point(static_cast<double>(k) / kArcChords);
    total += std::arg((next - z) / (prev - z));
    prev = next;
  }
  return total;
}

}  // namespace

PlanarDomain::PlanarDomain(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw GeometryError("domain needs at least one boundary piece");
  std::vector<cplx> pts;
  for (const auto& p : pieces_) {
    const Segment& s = p.segment;
    if (!is_finite(s.from) || !is_finite(s.to) || !(s.length() > 0.0)) {
      throw GeometryError("domain piece '" + p.label + "' is degenerate");
    }
    if (s.kind == Segment::Kind::arc && !(s.radius > 0.0)) throw GeometryError("arc piece needs a positive radius");
    for (int k = 0; k <= 8; ++k) pts.push_back(s.point(k / 8.0));
  }
  for (cplx a : pts)
    for (cplx b : pts) diameter_ = std::max(diameter_, std::abs(a - b));
  const double tol = 1e-12 * std::max(1.0, diameter_);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const cplx end = pieces_[i].segment.to;
    const cplx next = pieces_[(i + 1) % pieces_.size()].segment.from;
    if (std::abs(end - next) > tol) throw GeometryError("domain boundary pieces do not form a closed chain");
  }
}

std::set<std::string> PlanarDomain::labels() const {
  std::set<std::string> out;
  for (const auto& p : pieces_) out.insert(p.label);
  return out;
}

std::pair<double, std::size_t> PlanarDomain::nearest(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double d = pieces_[i].segment.distance_to(z);
    if (d < best) {
      best = d;
      index = i;
    }
  }
  return {best, index};
}

bool PlanarDomain::contains(cplx z) const {
  if (!is_finite(z) || nearest(z).first <= 1e-12 * diameter_) return false;
  double total = 0.0;
  for (const auto& p : pieces_) total += winding_increment(p.segment, z);
  return std::abs(std::round(total / (2.0 * pi))) == 1.0;
}

nlohmann::json PlanarDomain::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pieces_) {
    const Segment& s = p.segment;
    if (s.kind == Segment::Kind::line) {
      arr.push_back({{"kind", "segment"}, {"from", point_json(s.from)}, {"to", point_json(s.to)}, {"label", p.label}});
    } else {
      arr.push_back({{"kind", "arc"},
                     {"center", point_json(s.center)},
                     {"radius", s.radius},
                     {"theta0", s.theta0},
                     {"theta1", s.theta1},
                     {"label", p.label}});
    }
  }
  return {{"pieces", arr}};
}

PlanarDomain PlanarDomain::from_json(const nlohmann::json& j) {
  std::vector<Piece> pieces;
  try {
    for (const auto& p : j.at("pieces")) {
      const std::string kind = p.at("kind").get<std::string>();
      const std::string label = p.at("label").get<std::string>();
      if (kind == "segment") {
        pieces.push_back({Segment::line(point_from(p.at("from")), point_from(p.at("to"))), label});
      } else if (kind == "arc") {
        pieces.push_back({Segment::arc(point_from(p.at("center")), p.at("radius").get<double>(),
                                       p.at("theta0").get<double>(), p.at("theta1").get<double>()),
                          label});
      } else {
        throw DomainError("unknown piece kind '" + kind + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed domain: ") + e.what());
  }
  return PlanarDomain(std::move(pieces));
}

PlanarDomain unit_disk(double theta0, double theta1) {
  if (!(theta1 > theta0) || !(theta1 - theta0 < 2.0 * pi)) {
    throw DomainError("unit_disk needs theta0 < theta1 < theta0 + 2 pi");
  }
  return PlanarDomain({{Segment::arc(0.0, 1.0, theta0, theta1), "target"},
                       {Segment::arc(0.0, 1.0, theta1, theta0 + 2.0 * pi), "rest"}});
}

PlanarDomain build_domain_h(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("build_domain_h needs epsilon > 0");
  const double e = epsilon, x_edge = std::sqrt(24.0) * e;
  const double corner = std::asin(0.2);
  const cplx left(-x_edge, e), slot_l(2.0 * e, e), slot_r(3.0 * e, e), right(x_edge, e);
  const cplx bottom_l(2.0 * e, -e), bottom_r(3.0 * e, -e);
  Segment arc = Segment::arc(0.0, 5.0 * e, corner, pi - corner);
  // Pin the arc endpoints to the exact corners so the chain closes exactly.
  arc.from = right;
  arc.to = left;
  return PlanarDomain({{Segment::line(left, slot_l), "top_left"},
                       {Segment::line(slot_l, bottom_l), "slot_left"},
                       {Segment::line(bottom_l, bottom_r), "gamma"},
                       {Segment::line(bottom_r, slot_r), "slot_right"},
                       {Segment::line(slot_r, right), "top_right"},
                       {arc, "arc"}});
}

WalkEstimate walk_on_spheres(const PlanarDomain& domain, cplx z0, const std::set<std::string>& targets,
                             std::size_t walks, std::uint64_t seed, const WalkOptions& options, Exec exec) {
  if (walks < 2) throw DomainError("walk_on_spheres needs at least two walks");
  if (!(options.shell > 0.0 && options.shell < 1.0)) throw DomainError("walk_on_spheres: invalid shell width");
  if (!domain.contains(z0) || domain.nearest(z0).first < 1e-6) {
    throw DomainError("walk_on_spheres: start point must be interior with clearance >= 1e-6");
  }
  for (const auto& t : targets) {
    if (!domain.labels().count(t)) throw DomainError("walk_on_spheres: unknown target label '" + t + "'");
  }
  std::vector<char> is_target(domain.pieces().size());
  for (std::size_t i = 0; i < domain.pieces().size(); ++i) is_target[i] = targets.count(domain.pieces()[i].label) > 0;
  const double shell = options.shell * domain.diameter();

  // 1 = absorbed on a target piece, 0 = elsewhere, -1 = censored.
  std::vector<signed char> outcome(walks);
  for_each_index(exec, walks, [&](std::size_t w) {
    CounterRng rng(seed, w);
    cplx z = z0;
    for (std::size_t step = 0; step < options.max_steps; ++step) {
      const auto [d, piece] = domain.nearest(z);
      if (d <= shell) {
        outcome[w] = is_target[piece] ? 1 : 0;
        return;
      }
      z += std::polar(d, 2.0 * pi * rng.uniform());
    }
    outcome[w] = -1;
  });

  WalkEstimate out;
  out.walks = walks;
  out.seed = seed;
  std::size_t hits = 0;
  for (signed char o : outcome) {
    if (o < 0) ++out.censored;
    else hits += static_cast<std::size_t>(o);
  }
  if (static_cast<double>(out.censored) > options.max_censored * static_cast<double>(walks)) {
    throw QualityError("walk_on_spheres: " + std::to_string(out.censored) + " of " + std::to_string(walks) +
                       " walks censored");
  }
  const double n = static_cast<double>(walks - out.censored);
  out.mean = static_cast<double>(hits) / n;
  // Sample standard deviation of the 0/1 outcomes.
  const double var = n > 1.0 ? out.mean * (1.0 - out.mean) * n / (n - 1.0) : 0.0;
  out.stderr_ = std::sqrt(var / n);
  return out;
}

double disk_arc_measure(cplx z, double theta0, double theta1) {
  if (!is_finite(z) || !(std::abs(z) < 1.0)) throw DomainError("disk_arc_measure needs |z| < 1");
  const double span = theta1 - theta0;
  if (!(span >= 0.0)) throw DomainError("disk_arc_measure needs theta1 >= theta0");
  if (span >= 2.0 * pi) return 1.0;
  if (span == 0.0) return 0.0;
  // Angle at z swept counterclockwise from the first endpoint to the second.
  double sweep = std::arg((std::polar(1.0, theta1) - z) / (std::polar(1.0, theta0) - z));
  if (sweep < 0.0) sweep += 2.0 * pi;
  return std::clamp(sweep / pi - span / (2.0 * pi), 0.0, 1.0);
}

Lemma12Fit lemma12_fit(const std::vector<std::pair<cplx, double>>& samples) {
  if (samples.size() < 10) throw DomainError("lemma12_fit needs at least 10 samples");
  double sxx = 0.0, sxy = 0.0, syy = 0.0, sxu = 0.0, syu = 0.0, suu = 0.0;
  for (const auto& [z, u] : samples) {
    if (!(z.real() > 0.0) || !std::isfinite(u) || !is_finite(z)) {
      throw DomainError("lemma12_fit needs finite samples with Re z > 0");
    }
    const double x = z.real(), y = (1.0 / z).real();
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    sxu += x * u;
    syu += y * u;
    suu += u * u;
  }
  const double n = static_cast<double>(samples.size());
  auto sse = [&](double a, double b) {
    return std::max(0.0, suu - 2.0 * (a * sxu + b * syu) + a * a * sxx + 2.0 * a * b * sxy + b * b * syy);
  };
  // Candidates: the unconstrained optimum and the optima on each face.
  std::vector<std::pair<double, double>> candidates{{0.0, 0.0}};
  const double det = sxx * syy - sxy * sxy;
  if (det > 1e-14 * sxx * syy) {
    candidates.emplace_back((sxu * syy - syu * sxy) / det, (syu * sxx - sxu * sxy) / det);
  }
  if (sxx > 0.0) candidates.emplace_back(sxu / sxx, 0.0);
  if (syy > 0.0) candidates.emplace_back(0.0, syu / syy);
  Lemma12Fit fit;
  double best = std::numeric_limits<double>::infinity();
  for (auto [a, b] : candidates) {
    if (a < 0.0 || b < 0.0) continue;
    const double e = sse(a, b);
    if (e < best) {
      best = e;
      fit.a = a;
      fit.b = b;
    }
  }
  // Recompute the misfit directly; the normal-equation form loses digits.
  double rss = 0.0;
  for (const auto& [z, u] : samples) {
    const double r = u - fit.a * z.real() - fit.b * (1.0 / z).real();
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  fit.in_family = fit.residual <= 1e-8 * (1.0 + std::sqrt(suu / n));
  return fit;
}

std::string estimate_csv_row(const WalkEstimate& e) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%llu,%zu,%.17g,%.17g,%zu", static_cast<unsigned long long>(e.seed), e.walks, e.mean,
                e.stderr_, e.censored);
  return buf;
}

}  // namespace raydist::harmonic
