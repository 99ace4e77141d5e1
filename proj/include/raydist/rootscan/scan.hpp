#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "raydist/core.hpp"
#include "raydist/exec.hpp"
#include "raydist/mero/mero_map.hpp"
#include "raydist/mero/ray.hpp"
#include "raydist/rootscan/region.hpp"

namespace raydist::rootscan {

struct WindingOptions {
  /// Largest allowed distance of the raw integral from an integer.
  double max_residual = 0.25;
  /// An a-point closer than this fraction of the region diameter to the
  /// contour counts as lying on it.
  double boundary_fraction = 1e-9;
  /// Dilation applied per retry when an a-point sits on the contour.
  double nudge = 1e-6;
  int max_nudges = 3;
};

struct WindingResult {
  int count = 0;
  cplx raw{};           ///< (1/2 pi i) times the contour integral
  double residual = 0;  ///< distance of raw from count
  int nudges = 0;
  Region region;        ///< the (possibly dilated) region actually integrated
};

/// Number of a-points of f inside the region, by the argument principle
/// applied to the holomorphic a-point jet (so poles are not subtracted).
/// Throws GeometryError when an a-point stays on the contour after all
/// nudges and ContourError when the integral is not near an integer.
WindingResult winding_count(const mero::MeroMap& f, const Region& region, const mero::Target& a,
                            const WindingOptions& options = {});

struct RootRecord {
  cplx location{};
  int multiplicity = 1;
  mero::Target target;
  double refined_residual = 0.0;
  /// False for multiplicity clusters and Newton failures.
  bool refined = true;
};

struct LocateOptions {
  double tol = 1e-10;
  /// Boxes below this diameter that still hold several a-points are
  /// reported as one cluster record.
  double min_box = 1e-10;
  int max_newton = 50;
  WindingOptions winding;
};

/// Subdivides the region until every box holds at most one a-point and
/// refines each by Newton's method on the a-point jet. Multiplicities sum
/// to the winding count of the region. Records are sorted by modulus, then
/// argument. Exec::parallel distributes the boxes of each level.
std::vector<RootRecord> locate_roots(const mero::MeroMap& f, const Region& region, const mero::Target& a,
                                     const LocateOptions& options = {}, Exec exec = Exec::serial);

struct RayDeviation {
  double max_dev = 0.0;
  double mean_dev = 0.0;
};

/// Angular distance of each record from the ray. Throws DomainError for a
/// record at the origin.
RayDeviation ray_deviation(const std::vector<RootRecord>& catalog, const mero::RaySpec& ray);

nlohmann::json catalog_to_json(const std::string& function_id, const mero::Target& target, const Region& region,
                               const std::vector<RootRecord>& roots);
std::vector<RootRecord> catalog_from_json(const nlohmann::json& j);
/// Columns z_re, z_im, modulus, arg, mult, target, resid.
std::string catalog_to_csv(const std::vector<RootRecord>& roots);

}  // namespace raydist::rootscan
