#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "raydist/core.hpp"
#include "raydist/exec.hpp"
#include "raydist/geometry.hpp"

namespace raydist::harmonic {

struct Piece {
  Segment segment;
  std::string label;
};

/// Bounded domain whose boundary is a closed chain of segments and arcs.
class PlanarDomain {
 public:
  /// Consecutive pieces (and the last with the first) must meet within
  /// 1e-12 times the diameter.
  explicit PlanarDomain(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  double diameter() const { return diameter_; }
  std::set<std::string> labels() const;

  /// Distance to the boundary and the index of the nearest piece.
  std::pair<double, std::size_t> nearest(cplx z) const;
  /// Winding-number test; points on the boundary count as outside.
  bool contains(cplx z) const;

  nlohmann::json to_json() const;
  static PlanarDomain from_json(const nlohmann::json& j);

 private:
  std::vector<Piece> pieces_;
  double diameter_ = 0.0;
};

/// Unit circle split into a target arc [theta0, theta1] labelled "target"
/// and the rest labelled "rest".
PlanarDomain unit_disk(double theta0, double theta1);

/// The slotted domain H: the part of the disk of radius 5 eps above
/// Im z = eps together with the slot 2 eps < Re z < 3 eps down to
/// Im z = -eps; the slot bottom is labelled "gamma".
PlanarDomain build_domain_h(double epsilon);

struct WalkOptions {
  /// Absorption shell width as a fraction of the domain diameter.
  double shell = 1e-4;
  std::size_t max_steps = 100000;
  /// Largest tolerated fraction of censored walks.
  double max_censored = 1e-3;
};

struct WalkEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t walks = 0;
  std::uint64_t seed = 0;
  std::size_t censored = 0;
};

/// Walk-on-spheres estimate of the harmonic measure of the pieces carrying
/// the target labels, seen from z0. Walk i draws from CounterRng(seed, i),
/// so serial and parallel runs agree bit for bit. Censored walks are left
/// out of the mean; more than max_censored of them is a QualityError.
WalkEstimate walk_on_spheres(const PlanarDomain& domain, cplx z0, const std::set<std::string>& targets,
                             std::size_t walks, std::uint64_t seed, const WalkOptions& options = {},
                             Exec exec = Exec::serial);

/// Exact harmonic measure of the arc from theta0 counterclockwise to theta1
/// at z in the unit disk.
double disk_arc_measure(cplx z, double theta0, double theta1);

struct Lemma12Fit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;  ///< RMS misfit
  /// residual <= 1e-8 (1 + RMS of the samples)
  bool in_family = false;
};

/// Nonnegative least squares u ~ a Re z + b Re(1/z) over >= 10 samples with
/// Re z > 0.
Lemma12Fit lemma12_fit(const std::vector<std::pair<cplx, double>>& samples);

inline constexpr const char* kEstimateCsvHeader = "seed,walks,mean,stderr,censored";
std::string estimate_csv_row(const WalkEstimate& e);

}  // namespace raydist::harmonic
