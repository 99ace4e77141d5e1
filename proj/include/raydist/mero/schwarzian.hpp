#pragma once

#include "raydist/core.hpp"
#include "raydist/mero/jet.hpp"
#include "raydist/mero/mero_map.hpp"

namespace raydist::mero {

/// |f'| below this fraction of the jet's largest coefficient is a critical point.
inline constexpr double kCriticalTolerance = 1e-12;

/// S(g) = (g''/g')' - (g''/g')^2 / 2 from a jet. Throws CriticalPointError.
cplx schwarzian(const Jet3& g, cplx where = {});

/// S(f)(z), evaluated in whichever of the charts f, 1/f is bounded at z.
/// Uses the inner quotient num/den, to which f is Mobius-equivalent.
cplx schwarzian(const MeroMap& f, cplx z);

/// S(f)(z) from the jet of f itself (or of 1/f), with the outer Mobius map
/// applied first. Loses accuracy where f is close to a constant; used to
/// check invariance rather than to assume it.
cplx schwarzian_of_values(const MeroMap& f, cplx z);

}  // namespace raydist::mero
