#pragma once

#include <string>
#include <vector>

#include "raydist/core.hpp"
#include "raydist/mero/mero_map.hpp"
#include "raydist/rootscan/region.hpp"
#include "raydist/rootscan/scan.hpp"

namespace raydist::rootscan {

/// n(r, a): number of a-points of modulus <= r, counted with multiplicity.
class CountingFunction {
 public:
  CountingFunction() = default;
  CountingFunction(std::string target, std::vector<double> moduli);

  const std::string& target() const { return target_; }
  /// Sorted ascending, one entry per unit of multiplicity.
  const std::vector<double>& moduli() const { return moduli_; }
  std::size_t operator()(double r) const;
  std::size_t size() const { return moduli_.size(); }

 private:
  std::string target_;
  std::vector<double> moduli_;
};

CountingFunction counting(const std::vector<RootRecord>& catalog);
/// Multiset union, labelled "combined".
CountingFunction combined(const std::vector<CountingFunction>& parts);

struct GrowthFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Least-squares slope of log n(r) against log r sampled at the root moduli
/// in [r_lo, r_hi]. Requires at least 10 such moduli.
GrowthFit growth_exponent(const CountingFunction& c, double r_lo, double r_hi);

enum class SectorLimit { to_zero, to_one, to_infinity, inconclusive };
std::string to_string(SectorLimit s);

struct ProbeOptions {
  double small = 1e-3;
  double large = 1e3;
  /// Rays that carry a-points; the sector interior must keep this margin.
  std::vector<double> root_rays;
  double margin = 0.05;
};

struct ProbeResult {
  SectorLimit limit = SectorLimit::inconclusive;
  std::vector<double> radii;
  std::vector<double> abs_f;          ///< |f| along the bisector
  std::vector<double> abs_f_minus_1;  ///< |f - 1| along the bisector
};

/// Classifies the limit of f along the bisector of an annulus sector from
/// the values at the largest radius; the two largest radii must agree.
ProbeResult sector_limit_probe(const mero::MeroMap& f, const Region& sector, const std::vector<double>& radii,
                               const ProbeOptions& options = {});

/// Radii r0, r0 * factor, ... up to r_max.
std::vector<double> geometric_radii(double r0, double r_max, double factor = 1.5);

}  // namespace raydist::rootscan
