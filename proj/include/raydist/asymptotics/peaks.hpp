#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "raydist/core.hpp"
#include "raydist/rootscan/counting.hpp"

namespace raydist::asymptotics {

/// Samples (r, g(r)) of a positive nondecreasing function.
class GrowthSample {
 public:
  GrowthSample() = default;
  /// Sorts by r; rejects r <= 0, g <= 0, repeated r and decreasing g.
  explicit GrowthSample(std::vector<std::pair<double, double>> points);

  /// (r_k, n(r_k)) at every distinct root modulus r_k in [r_lo, r_hi].
  static GrowthSample from_counting(const rootscan::CountingFunction& n, double r_lo, double r_hi);

  const std::vector<std::pair<double, double>>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double r_min() const { return points_.front().first; }
  double r_max() const { return points_.back().first; }
  double decades() const { return std::log10(r_max() / r_min()); }

  std::string to_csv() const;
  static GrowthSample from_csv(const std::string& text);

 private:
  std::vector<std::pair<double, double>> points_;
};

enum class PeakKind { first, second };
std::string to_string(PeakKind k);

struct Peak {
  std::size_t index = 0;
  double r = 0.0;
  double epsilon = 0.0;
};

struct PeakReport {
  double lambda = 0.0;
  PeakKind kind = PeakKind::first;
  std::vector<double> schedule;
  /// Grouped by schedule entry, ascending index within a group.
  std::vector<Peak> peaks;

  std::vector<Peak> at(double epsilon) const;
  nlohmann::json to_json() const;
};

inline const std::vector<double> kDefaultSchedule{0.5, 0.25, 0.1, 0.05};

/// For each epsilon, the sample points r_k whose window [eps r_k, r_k / eps]
/// lies inside the sample and for which every sampled t in [eps, 1/eps]
/// satisfies g(t r_k) <= (1 + eps) t^lambda g(r_k) (first kind) or
/// g(t r_k) >= (1 - eps) t^lambda g(r_k) (second kind). The sample must be
/// long enough for each epsilon to have such a window.
PeakReport polya_peaks(const GrowthSample& g, double lambda, PeakKind kind,
                       const std::vector<double>& schedule = kDefaultSchedule);

struct OrderBounds {
  double lower_order = 0.0;
  double order = 0.0;
  /// Least-squares slope of log g on log r over the whole sample.
  double slope = 0.0;
  double stderr_ = 0.0;
};

/// Extremes over the final decade of the chord slopes
/// log(g(r) / g(r_0)) / log(r / r_0), where r_0 is the first sample, so a
/// constant factor in g cancels exactly. Needs 3 decades.
OrderBounds order_bounds(const GrowthSample& g);

}  // namespace raydist::asymptotics
