#include "raydist/mero/mobius.hpp"

#include <algorithm>

#include "raydist/mero/schwarzian.hpp"

namespace raydist::mero {

Mobius::Mobius(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(std::abs(a * d - b * c) > 1e-14 * scale * scale)) {
    throw DomainError("Mobius map is degenerate (ad - bc = 0)");
  }
}

cplx Mobius::operator()(cplx w) const {
  const cplx den = c_ * w + d_;
  if (den == cplx(0.0)) throw RangeError("Mobius map sends the point to infinity");
  return (a_ * w + b_) / den;
}

MeroMap mobius_apply(const Mobius& L, const MeroMap& f) {
  return MeroMap(f.id() + "|mobius", [L, f](cplx z) {
    QuotientJet q = f.quotient(z);
    const auto m = q.outer;
    q.outer = {L.a() * m[0] + L.b() * m[2], L.a() * m[1] + L.b() * m[3],
               L.c() * m[0] + L.d() * m[2], L.c() * m[1] + L.d() * m[3]};
    return q;
  });
}

double mobius_invariance_residual(const Mobius& L, const MeroMap& f, cplx z) {
  return std::abs(schwarzian_of_values(mobius_apply(L, f), z) - schwarzian_of_values(f, z));
}

}  // namespace raydist::mero
