#include "raydist/mero/rational.hpp"

#include <algorithm>

#include "raydist/mero/polynomial.hpp"

namespace raydist::mero {

RationalMap::RationalMap(std::vector<cplx> num, std::vector<cplx> den) {
  if (num.empty() || den.empty()) throw DomainError("rational map: empty coefficient list");
  for (const auto* list : {&num, &den})
    for (cplx c : *list)
      if (!is_finite(c)) throw DomainError("rational map: non-finite coefficient");
  num_ = trim(std::move(num));
  den_ = trim(std::move(den));
  if (den_.size() == 1 && den_[0] == cplx(0.0)) throw DomainError("rational map: zero denominator");
  if (num_.size() == 1 && num_[0] == cplx(0.0)) {
    den_ = {1.0};
    return;
  }
  if (num_.size() > 1 && den_.size() > 1 && normalized_resultant(num_, den_) < kCommonRootTolerance) {
    throw DomainError("rational map: numerator and denominator share a root");
  }
}

cplx RationalMap::operator()(cplx z) const {
  const cplx d = poly_eval(den_, z);
  if (d == cplx(0.0)) throw RangeError("rational map evaluated at a pole");
  return poly_eval(num_, z) / d;
}

Jet3 RationalMap::jet(cplx z) const { return poly_jet(num_, z) / poly_jet(den_, z); }

QuotientJet RationalMap::quotient(cplx z) const {
  return QuotientJet{{poly_jet(num_, z), 0.0}, {poly_jet(den_, z), 0.0}};
}

std::vector<cplx> RationalMap::poles() const { return poly_roots(den_); }

double RationalMap::max_imag_coefficient() const {
  const cplx lead = den_.back();
  double worst = 0.0;
  for (const auto* list : {&num_, &den_})
    for (cplx c : *list) worst = std::max(worst, std::abs((c / lead).imag()));
  return worst;
}

MeroMap RationalMap::as_mero(std::string id) const {
  RationalMap copy = *this;
  return MeroMap(std::move(id), [copy](cplx z) { return copy.quotient(z); }, poles());
}

nlohmann::json complex_list_to_json(const std::vector<cplx>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (cplx c : values) out.push_back({c.real(), c.imag()});
  return out;
}

std::vector<cplx> complex_list_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DomainError("expected an array of [re, im] pairs");
  std::vector<cplx> out;
  for (const auto& item : j) {
    if (item.is_number()) {
      out.emplace_back(item.get<double>(), 0.0);
    } else if (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number()) {
      out.emplace_back(item[0].get<double>(), item[1].get<double>());
    } else {
      throw DomainError("expected [re, im] pair, got " + item.dump());
    }
  }
  return out;
}

nlohmann::json RationalMap::to_json() const {
  return {{"num", complex_list_to_json(num_)}, {"den", complex_list_to_json(den_)}};
}

RationalMap RationalMap::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num")) throw DomainError("rational map JSON needs a \"num\" field");
  std::vector<cplx> den{1.0};
  if (j.contains("den")) den = complex_list_from_json(j.at("den"));
  return RationalMap(complex_list_from_json(j.at("num")), std::move(den));
}

}  // namespace raydist::mero
