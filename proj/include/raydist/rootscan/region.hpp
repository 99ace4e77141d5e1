#pragma once

#include <vector>

#include <json.hpp>

#include "raydist/core.hpp"
#include "raydist/geometry.hpp"

namespace raydist::rootscan {

/// A closed scan region: an axis-aligned rectangle or an annulus sector
/// {r_in <= |z| <= r_out, theta_lo <= arg z <= theta_hi}. A full annulus has
/// two boundary loops and no radial edges.
class Region {
 public:
  enum class Kind { rectangle, annulus_sector };

  static Region rectangle(cplx lo, cplx hi);
  static Region annulus_sector(double r_in, double r_out, double theta_lo, double theta_hi);
  static Region annulus(double r_in, double r_out);

  Kind kind() const { return kind_; }
  bool full_annulus() const { return full_; }
  cplx lo() const { return lo_; }
  cplx hi() const { return hi_; }
  double r_in() const { return r_in_; }
  double r_out() const { return r_out_; }
  double theta_lo() const { return theta_lo_; }
  double theta_hi() const { return theta_hi_; }

  /// Positively oriented boundary loops.
  std::vector<std::vector<Segment>> contours() const;
  bool contains(cplx z, double slack = 0.0) const;
  double diameter() const;
  cplx center() const;

  /// Enlarged copy: rectangles scale about their center, annulus sectors
  /// scale radii outward/inward and widen the angular span by the same factor.
  Region dilated(double factor) const;

  /// Children partitioning this region, cut at `fraction` of each split
  /// extent. The longer extent is split alone when it exceeds twice the
  /// other; otherwise both are (four children).
  std::vector<Region> split(double fraction) const;

  nlohmann::json to_json() const;
  static Region from_json(const nlohmann::json& j);

 private:
  Kind kind_ = Kind::rectangle;
  bool full_ = false;
  cplx lo_{}, hi_{};
  double r_in_ = 0.0, r_out_ = 0.0, theta_lo_ = 0.0, theta_hi_ = 0.0;
};

}  // namespace raydist::rootscan
