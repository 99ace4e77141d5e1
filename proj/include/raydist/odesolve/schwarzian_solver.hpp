#pragma once

#include <array>

#include "raydist/mero/mero_map.hpp"
#include "raydist/mero/rational.hpp"
#include "raydist/odesolve/transport.hpp"

namespace raydist::odesolve {

struct SolverOptions {
  double tol = 1e-12;
  /// Detour radius around poles of Q.
  double clearance = 0.1;
};

/// f = w1 / w2 for independent solutions of w'' + (Q/2) w = 0 given at the
/// basepoint, so that S(f) = Q. Each evaluation transports both solutions
/// along a straight path, detouring around poles of Q. Throws DomainError when
/// the initial Wronskian is below 1e-10.
mero::MeroMap solve_schwarzian(const mero::RationalMap& Q, cplx basepoint,
                               const std::array<TransportState, 2>& basis, const SolverOptions& options = {});

/// Jet of a solution at its endpoint, using w'' = -A w and w''' = -A' w - A w'.
mero::ScaledJet solution_jet(const mero::RationalMap& A, cplx z, const TransportState& s);

}  // namespace raydist::odesolve
