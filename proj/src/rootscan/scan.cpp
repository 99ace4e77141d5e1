#include "raydist/rootscan/scan.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <optional>
#include <sstream>

namespace raydist::rootscan {
namespace {

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                          -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                          0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                            0.2223810344533745, 0.1012285362903763};

constexpr int kMaxDepth = 48;

// An a-point on (or numerically on) the contour.
struct BoundaryHit {};

struct Sample {
  cplx logderiv;     // h'/h
  double log_abs;    // log|h|
  double arg;        // arg h
  int chart;
};

class ContourIntegrator {
 public:
  ContourIntegrator(const mero::MeroMap& f, const mero::Target& a, double boundary_distance)
      : f_(f), a_(a), boundary_(boundary_distance) {}

  cplx loop(const std::vector<Segment>& edges) const {
    cplx total(0.0);
    for (const auto& e : edges) total += edge(e);
    return total;
  }

 private:
  Sample sample(cplx z) const {
    int chart = 0;
    const mero::ScaledJet h = f_.a_point_jet(z, a_, &chart);
    const cplx c0 = h.mant.c[0], c1 = h.mant.c[1];
    if (!is_finite(c0) || !is_finite(c1)) throw DomainError("non-finite a-point jet on the contour");
    if (c0 == cplx(0.0) || std::abs(c0) <= boundary_ * std::abs(c1)) throw BoundaryHit{};
    return Sample{c1 / c0, std::log(std::abs(c0)) + h.log_scale, std::arg(c0), chart};
  }

  cplx rule(const Segment& e, double t0, double t1) const {
    const double half = 0.5 * (t1 - t0), mid = 0.5 * (t0 + t1);
    cplx sum(0.0);
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
      const double t = mid + half * kNodes[i];
      sum += kWeights[i] * sample(e.point(t)).logderiv * e.velocity(t);
    }
    return sum * half;
  }

  // The increment of log h over [t0, t1] must match the endpoint values when
  // both ends use the same representation; its imaginary part is kept below
  // pi/2 so the branch of arg h is never ambiguous.
  bool consistent(cplx integral, const Sample& s0, const Sample& s1) const {
    if (std::abs(integral.imag()) > 0.5 * pi) return false;
    if (s0.chart != s1.chart) return true;
    const double dlog = s1.log_abs - s0.log_abs;
    const double darg = wrap_angle(s1.arg - s0.arg);
    const double tol = 1e-7 * (1.0 + std::abs(integral));
    return std::abs(integral.real() - dlog) <= tol && std::abs(wrap_angle(integral.imag() - darg)) <= tol;
  }

  cplx refine(const Segment& e, double t0, double t1, cplx whole, const Sample& s0, const Sample& s1,
              int depth) const {
    const double mid = 0.5 * (t0 + t1);
    const cplx left = rule(e, t0, mid), right = rule(e, mid, t1);
    const cplx both = left + right;
    const bool converged = std::abs(both - whole) <= 1e-10 * (1.0 + std::abs(both));
    if (converged && consistent(both, s0, s1)) return both;
    if (depth >= kMaxDepth) throw ContourError("contour integral did not converge");
    const Sample sm = sample(e.point(mid));
    return refine(e, t0, mid, left, s0, sm, depth + 1) + refine(e, mid, t1, right, sm, s1, depth + 1);
  }

  cplx edge(const Segment& e) const {
    // Start from a few pieces so that short oscillations are not missed.
    const int pieces = 4;
    cplx total(0.0);
    Sample prev = sample(e.point(0.0));
    for (int k = 0; k < pieces; ++k) {
      const double t0 = static_cast<double>(k) / pieces, t1 = static_cast<double>(k + 1) / pieces;
      const Sample next = sample(e.point(t1));
      total += refine(e, t0, t1, rule(e, t0, t1), prev, next, 0);
      prev = next;
    }
    return total;
  }

  const mero::MeroMap& f_;
  mero::Target a_;
  double boundary_;
};

// Winding count without nudging; throws BoundaryHit.
WindingResult integrate_region(const mero::MeroMap& f, const Region& region, const mero::Target& a,
                               const WindingOptions& options) {
  const ContourIntegrator integ(f, a, options.boundary_fraction * region.diameter());
  cplx total(0.0);
  for (const auto& loop : region.contours()) total += integ.loop(loop);
  WindingResult r;
  r.raw = total / (2.0 * pi * imag_unit);
  r.count = static_cast<int>(std::lround(r.raw.real()));
  r.residual = std::abs(r.raw - cplx(r.count, 0.0));
  r.region = region;
  if (r.residual > options.max_residual) {
    std::ostringstream os;
    os << "unresolved contour: winding integral " << r.raw.real() << " + " << r.raw.imag() << "i";
    throw ContourError(os.str());
  }
  if (r.count < 0) throw ContourError("negative a-point count from a holomorphic jet");
  return r;
}

constexpr std::array<double, 6> kSplitFractions = {0.4637, 0.5371, 0.4123, 0.5813, 0.4431, 0.3917};

struct Box {
  Region region;
  int count;
};

std::optional<cplx> newton(const mero::MeroMap& f, const mero::Target& a, cplx z, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const mero::ScaledJet h = f.a_point_jet(z, a);
    const cplx c0 = h.mant.c[0], c1 = h.mant.c[1];
    if (c0 == cplx(0.0)) return z;
    if (c1 == cplx(0.0) || !is_finite(c0) || !is_finite(c1)) return std::nullopt;
    const cplx step = c0 / c1;
    z -= step;
    if (!is_finite(z)) return std::nullopt;
    if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(z))) {
      // One polishing step; keep it only if it does not move away.
      const mero::ScaledJet g = f.a_point_jet(z, a);
      if (g.mant.c[1] != cplx(0.0)) {
        const cplx polish = g.mant.c[0] / g.mant.c[1];
        if (std::abs(polish) <= std::abs(step)) z -= polish;
      }
      return z;
    }
  }
  return std::nullopt;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

}  // namespace

WindingResult winding_count(const mero::MeroMap& f, const Region& region, const mero::Target& a,
                            const WindingOptions& options) {
  Region current = region;
  for (int attempt = 0; attempt <= options.max_nudges; ++attempt) {
    try {
      WindingResult r = integrate_region(f, current, a, options);
      r.nudges = attempt;
      return r;
    } catch (const BoundaryHit&) {
      current = current.dilated(1.0 + options.nudge);
    }
  }
  throw GeometryError("a-point of '" + f.id() + "' lies on the scan contour after " +
                      std::to_string(options.max_nudges) + " nudges");
}

std::vector<RootRecord> locate_roots(const mero::MeroMap& f, const Region& region, const mero::Target& a,
                                     const LocateOptions& options, Exec exec) {
  const WindingResult top = winding_count(f, region, a, options.winding);
  std::vector<RootRecord> out;
  std::vector<Box> level;
  if (top.count > 0) level.push_back({top.region, top.count});

  auto make_record = [&](cplx z, int mult, bool refined) {
    RootRecord r;
    r.location = z;
    r.multiplicity = mult;
    r.target = a;
    r.refined = refined;
    r.refined_residual = f.distance_to(z, a);
    return r;
  };

  while (!level.empty()) {
    std::vector<std::vector<Box>> children(level.size());
    std::vector<std::vector<RootRecord>> found(level.size());
    for_each_index(exec, level.size(), [&](std::size_t i) {
      const Box& box = level[i];
      const double diam = box.region.diameter();
      if (box.count == 1) {
        const auto z = newton(f, a, box.region.center(), options.max_newton);
        if (z && box.region.contains(*z, 1e-9 * diam)) {
          found[i].push_back(make_record(*z, 1, true));
          return;
        }
        if (diam <= 1e-8 * (1.0 + std::abs(box.region.center()))) {
          RootRecord r = make_record(box.region.center(), 1, false);
          r.refined_residual = diam;
          found[i].push_back(r);
          return;
        }
      } else if (diam < options.min_box) {
        found[i].push_back(make_record(box.region.center(), box.count, false));
        return;
      }
      for (double fraction : kSplitFractions) {
        try {
          std::vector<Box> kids;
          int total = 0;
          for (const Region& child : box.region.split(fraction)) {
            const WindingResult w = integrate_region(f, child, a, options.winding);
            total += w.count;
            if (w.count > 0) kids.push_back({child, w.count});
          }
          if (total == box.count) {
            children[i] = std::move(kids);
            return;
          }
        } catch (const BoundaryHit&) {
        } catch (const ContourError&) {
        }
      }
      throw ContourError("could not partition a box holding " + std::to_string(box.count) + " a-points");
    });
    std::vector<Box> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (auto& r : found[i]) out.push_back(r);
      for (auto& b : children[i]) next.push_back(std::move(b));
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const RootRecord& x, const RootRecord& y) {
    const double mx = std::abs(x.location), my = std::abs(y.location);
    if (mx != my) return mx < my;
    return std::arg(x.location) < std::arg(y.location);
  });
  return out;
}

RayDeviation ray_deviation(const std::vector<RootRecord>& catalog, const mero::RaySpec& ray) {
  RayDeviation d;
  if (catalog.empty()) return d;
  double sum = 0.0;
  for (const auto& r : catalog) {
    if (r.location == cplx(0.0)) throw DomainError("ray_deviation: record at the origin has no direction");
    const double dev = std::abs(wrap_angle(std::arg(r.location) - ray.theta));
    d.max_dev = std::max(d.max_dev, dev);
    sum += dev;
  }
  d.mean_dev = sum / static_cast<double>(catalog.size());
  return d;
}

nlohmann::json catalog_to_json(const std::string& function_id, const mero::Target& target, const Region& region,
                               const std::vector<RootRecord>& roots) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : roots) {
    list.push_back({{"z", {r.location.real(), r.location.imag()}},
                    {"mult", r.multiplicity},
                    {"resid", r.refined_residual},
                    {"refined", r.refined}});
  }
  return {{"function", function_id}, {"target", target.label()}, {"region", region.to_json()}, {"roots", list}};
}

std::vector<RootRecord> catalog_from_json(const nlohmann::json& j) {
  try {
    const mero::Target target = mero::Target::parse(j.at("target").get<std::string>());
    std::vector<RootRecord> out;
    for (const auto& item : j.at("roots")) {
      RootRecord r;
      r.location = {item.at("z").at(0).get<double>(), item.at("z").at(1).get<double>()};
      r.multiplicity = item.at("mult").get<int>();
      r.refined_residual = item.at("resid").get<double>();
      r.refined = item.value("refined", true);
      r.target = target;
      out.push_back(r);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed root catalog: ") + e.what());
  }
}

std::string catalog_to_csv(const std::vector<RootRecord>& roots) {
  std::string out = "z_re,z_im,modulus,arg,mult,target,resid\n";
  for (const auto& r : roots) {
    out += format_number(r.location.real()) + "," + format_number(r.location.imag()) + "," +
           format_number(std::abs(r.location)) + "," + format_number(std::arg(r.location)) + "," +
           std::to_string(r.multiplicity) + "," + csv_field(r.target.label()) + "," + format_number(r.refined_residual) +
           "\n";
  }
  return out;
}

}  // namespace raydist::rootscan
