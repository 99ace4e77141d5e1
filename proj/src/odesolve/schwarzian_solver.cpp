#include "raydist/odesolve/schwarzian_solver.hpp"

#include <algorithm>

#include "raydist/odesolve/path.hpp"

namespace raydist::odesolve {

mero::ScaledJet solution_jet(const mero::RationalMap& A, cplx z, const TransportState& s) {
  const mero::Jet3 a = A.jet(z);
  const cplx a0 = a.c[0], a1 = a.c[1];
  return mero::ScaledJet{mero::Jet3{{s.w, s.w_prime, -0.5 * a0 * s.w, -(a1 * s.w + a0 * s.w_prime) / 6.0}},
                         s.log_scale};
}

mero::MeroMap solve_schwarzian(const mero::RationalMap& Q, cplx basepoint,
                               const std::array<TransportState, 2>& basis, const SolverOptions& options) {
  const cplx w0 = basis[0].w * basis[1].w_prime - basis[0].w_prime * basis[1].w;
  const double rel = std::abs(w0) * std::exp(basis[0].log_scale + basis[1].log_scale);
  if (!(rel > 1e-10)) throw DomainError("solve_schwarzian: initial basis has a degenerate Wronskian");
  const std::vector<cplx> poles = Q.poles();
  for (cplx p : poles) {
    if (std::abs(p - basepoint) < options.clearance) {
      throw DomainError("solve_schwarzian: basepoint is within the clearance radius of a pole of Q");
    }
  }
  std::vector<cplx> half_num = Q.num();
  for (cplx& c : half_num) c *= 0.5;
  const mero::RationalMap A(half_num, Q.den());

  std::string id = "schwarzian_solution";
  return mero::MeroMap(
      id,
      [A, basepoint, basis, poles, options](cplx z) {
        std::array<TransportState, 2> at = basis;
        if (z != basepoint) {
          // Closer poles shrink the detour so the endpoint itself stays admissible.
          double clearance = options.clearance;
          for (cplx p : poles) clearance = std::min(clearance, 0.5 * std::abs(p - z));
          at = transport_pair(A, route(basepoint, z, poles, clearance), basis, options.tol);
        }
        return mero::QuotientJet{solution_jet(A, z, at[0]), solution_jet(A, z, at[1])};
      },
      poles);
}

}  // namespace raydist::odesolve
