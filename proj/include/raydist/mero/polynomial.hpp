#pragma once

#include <span>
#include <vector>

#include "raydist/core.hpp"
#include "raydist/mero/jet.hpp"

namespace raydist::mero {

/// Coefficients are stored lowest degree first throughout.
cplx poly_eval(std::span<const cplx> coeffs, cplx z);
Jet3 poly_jet(std::span<const cplx> coeffs, cplx z);

/// Roots by eigenvalues of the companion matrix. Trailing zero coefficients
/// are ignored; a constant polynomial has no roots.
std::vector<cplx> poly_roots(std::span<const cplx> coeffs);

/// Resultant of two polynomials after scaling each to unit max coefficient.
double normalized_resultant(std::span<const cplx> p, std::span<const cplx> q);

/// Drops exactly-zero leading coefficients, keeping at least one entry.
std::vector<cplx> trim(std::vector<cplx> coeffs);

}  // namespace raydist::mero
