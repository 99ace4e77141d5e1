#include "raydist/rootscan/counting.hpp"

#include <algorithm>
#include <cfloat>

namespace raydist::rootscan {

CountingFunction::CountingFunction(std::string target, std::vector<double> moduli)
    : target_(std::move(target)), moduli_(std::move(moduli)) {
  for (double m : moduli_)
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("counting function: invalid modulus");
  std::sort(moduli_.begin(), moduli_.end());
}

std::size_t CountingFunction::operator()(double r) const {
  return static_cast<std::size_t>(std::upper_bound(moduli_.begin(), moduli_.end(), r) - moduli_.begin());
}

CountingFunction counting(const std::vector<RootRecord>& catalog) {
  std::vector<double> moduli;
  std::string target = catalog.empty() ? std::string() : catalog.front().target.label();
  for (const auto& r : catalog) {
    if (!(r.target == catalog.front().target)) throw DomainError("counting: catalog mixes targets");
    for (int k = 0; k < r.multiplicity; ++k) moduli.push_back(std::abs(r.location));
  }
  return CountingFunction(target, std::move(moduli));
}

CountingFunction combined(const std::vector<CountingFunction>& parts) {
  std::vector<double> all;
  for (const auto& p : parts) all.insert(all.end(), p.moduli().begin(), p.moduli().end());
  return CountingFunction("combined", std::move(all));
}

GrowthFit growth_exponent(const CountingFunction& c, double r_lo, double r_hi) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw DomainError("growth_exponent: need 0 < r_lo < r_hi");
  std::vector<double> xs, ys;
  const auto& m = c.moduli();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < r_lo || m[i] > r_hi) continue;
    // Sample once per distinct modulus, at the count including it.
    if (i + 1 < m.size() && m[i + 1] == m[i]) continue;
    xs.push_back(std::log(m[i]));
    ys.push_back(std::log(static_cast<double>(i + 1)));
  }
  if (xs.size() < 10) throw DomainError("growth_exponent: fewer than 10 roots in the fit range");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("growth_exponent: degenerate radius range");
  GrowthFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = xs.size();
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += e * e;
  }
  fit.stderr_ = xs.size() > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : 0.0;
  return fit;
}

std::string to_string(SectorLimit s) {
  switch (s) {
    case SectorLimit::to_zero:
      return "to_zero";
    case SectorLimit::to_one:
      return "to_one";
    case SectorLimit::to_infinity:
      return "to_infinity";
    case SectorLimit::inconclusive:
      break;
  }
  return "inconclusive";
}

ProbeResult sector_limit_probe(const mero::MeroMap& f, const Region& sector, const std::vector<double>& radii,
                               const ProbeOptions& options) {
  if (sector.kind() != Region::Kind::annulus_sector || sector.full_annulus()) {
    throw DomainError("sector_limit_probe needs a proper annulus sector");
  }
  if (radii.size() < 2) throw DomainError("sector_limit_probe needs at least two radii");
  for (double ray : options.root_rays) {
    const double lo = sector.theta_lo() + options.margin, hi = sector.theta_hi() - options.margin;
    const double mid = 0.5 * (sector.theta_lo() + sector.theta_hi());
    const double off = std::abs(wrap_angle(ray - mid));
    if (off < 0.5 * (hi - lo) + options.margin) {
      throw DomainError("sector_limit_probe: sector comes within the margin of a root ray");
    }
  }
  const double bisector = 0.5 * (sector.theta_lo() + sector.theta_hi());
  ProbeResult out;
  std::vector<double> sorted = radii;
  std::sort(sorted.begin(), sorted.end());
  auto classify = [&](double abs_f, double abs_f1) {
    if (abs_f < options.small) return SectorLimit::to_zero;
    if (abs_f1 < options.small) return SectorLimit::to_one;
    if (abs_f > options.large) return SectorLimit::to_infinity;
    return SectorLimit::inconclusive;
  };
  for (double r : sorted) {
    const cplx z = std::polar(r, bisector);
    out.radii.push_back(r);
    out.abs_f.push_back(std::min(std::exp(f.log_abs(z)), DBL_MAX));
    out.abs_f_minus_1.push_back(f.distance_to(z, mero::Target::one()));
  }
  const std::size_t n = sorted.size();
  const SectorLimit last = classify(out.abs_f[n - 1], out.abs_f_minus_1[n - 1]);
  const SectorLimit prev = classify(out.abs_f[n - 2], out.abs_f_minus_1[n - 2]);
  out.limit = last == prev ? last : SectorLimit::inconclusive;
  return out;
}

std::vector<double> geometric_radii(double r0, double r_max, double factor) {
  if (!(r0 > 0.0) || !(r_max >= r0) || !(factor > 1.0)) throw DomainError("geometric_radii: invalid schedule");
  std::vector<double> out;
  for (double r = r0; r <= r_max * (1.0 + 1e-12); r *= factor) out.push_back(r);
  return out;
}

}  // namespace raydist::rootscan
