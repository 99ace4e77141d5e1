#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "raydist/core.hpp"
#include "raydist/mero/jet.hpp"
#include "raydist/mero/mero_map.hpp"

namespace raydist::mero {

/// Normalized resultant below which numerator and denominator are treated as
/// sharing a root.
inline constexpr double kCommonRootTolerance = 1e-13;

/// P/Q with coefficient lists stored lowest degree first.
class RationalMap {
 public:
  RationalMap() : RationalMap({cplx(0.0)}, {cplx(1.0)}) {}
  /// Throws DomainError on an empty list, a zero denominator, or numerator and
  /// denominator with a common root.
  RationalMap(std::vector<cplx> num, std::vector<cplx> den);

  static RationalMap polynomial(std::vector<cplx> coeffs) { return RationalMap(std::move(coeffs), {cplx(1.0)}); }
  static RationalMap constant(cplx v) { return polynomial({v}); }

  const std::vector<cplx>& num() const { return num_; }
  const std::vector<cplx>& den() const { return den_; }
  int num_degree() const { return static_cast<int>(num_.size()) - 1; }
  int den_degree() const { return static_cast<int>(den_.size()) - 1; }
  bool is_polynomial() const { return den_.size() == 1; }

  cplx operator()(cplx z) const;
  Jet3 jet(cplx z) const;
  QuotientJet quotient(cplx z) const;
  std::vector<cplx> poles() const;

  /// max |Im c| over all coefficients after dividing by the leading
  /// denominator coefficient.
  double max_imag_coefficient() const;

  MeroMap as_mero(std::string id) const;

  nlohmann::json to_json() const;
  static RationalMap from_json(const nlohmann::json& j);

 private:
  std::vector<cplx> num_;
  std::vector<cplx> den_;
};

nlohmann::json complex_list_to_json(const std::vector<cplx>& values);
std::vector<cplx> complex_list_from_json(const nlohmann::json& j);

}  // namespace raydist::mero
