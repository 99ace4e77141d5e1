#include "raydist/mero/ray.hpp"

#include <algorithm>

namespace raydist::mero {
namespace {

std::vector<cplx> substitute_cube(const std::vector<cplx>& p, std::size_t shift) {
  std::vector<cplx> out(3 * (p.size() - 1) + 1 + shift, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) out[3 * k + shift] = p[k];
  return out;
}

}  // namespace

RationalMap build_q(const RaySpec& ray, const RationalMap& R) {
  const cplx lead = R.den().back();
  std::vector<cplx> num = R.num(), den = R.den();
  for (cplx& c : num) c /= lead;
  for (cplx& c : den) c /= lead;

  double scale = 1.0;
  for (const auto* list : {&num, &den})
    for (cplx c : *list) scale = std::max(scale, std::abs(c));
  if (R.max_imag_coefficient() > 1e-12 * scale) {
    throw DomainError("build_q: R must have real coefficients (hypothesis 0 < R(inf) < inf)");
  }
  if (R.num_degree() != R.den_degree() || !(num.back().real() > 0.0)) {
    throw DomainError("build_q: R(inf) must be finite and positive (hypothesis 0 < R(inf) < inf)");
  }
  for (cplx& c : num) c = c.real();
  for (cplx& c : den) c = c.real();

  std::vector<cplx> q_num = substitute_cube(num, 1);
  std::vector<cplx> q_den = substitute_cube(den, 0);
  while (q_num.size() > 1 && q_den.size() > 1 && q_num.front() == cplx(0.0) && q_den.front() == cplx(0.0)) {
    q_num.erase(q_num.begin());
    q_den.erase(q_den.begin());
  }
  const cplx rotation = unit_phase(3.0 * ray.theta);
  for (cplx& c : q_num) c *= rotation;
  return RationalMap(std::move(q_num), std::move(q_den));
}

}  // namespace raydist::mero
