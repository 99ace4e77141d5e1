#include "raydist/mero/schwarzian.hpp"

#include <sstream>

namespace raydist::mero {

cplx schwarzian(const Jet3& g, cplx where) {
  const cplx c1 = g.c[1];
  if (!(std::abs(c1) > kCriticalTolerance * g.max_abs())) {
    std::ostringstream os;
    os.precision(17);
    os << "critical point: f' vanishes at z = (" << where.real() << ", " << where.imag() << ")";
    throw CriticalPointError(os.str(), where);
  }
  const cplx ratio = g.c[2] / c1;
  return 6.0 * g.c[3] / c1 - 6.0 * ratio * ratio;
}

cplx schwarzian(const MeroMap& f, cplx z) {
  // Constant factors drop out of S, so the mantissa quotient suffices; only
  // the chart choice needs the true magnitudes.
  const QuotientJet q = f.quotient(z);
  const double num0 = std::abs(q.num.mant.c[0]), den0 = std::abs(q.den.mant.c[0]);
  bool direct = false;
  if (den0 == 0.0) {
    direct = false;
  } else if (num0 == 0.0) {
    direct = true;
  } else {
    direct = std::log(num0) + q.num.log_scale <= std::log(den0) + q.den.log_scale;
  }
  if (direct) return schwarzian(q.num.mant / q.den.mant, z);
  return schwarzian(q.den.mant / q.num.mant, z);
}

cplx schwarzian_of_values(const MeroMap& f, cplx z) { return schwarzian(f.jet(z).jet, z); }

}  // namespace raydist::mero
