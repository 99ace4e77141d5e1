#pragma once

#include <array>
#include <cstddef>

#include "raydist/core.hpp"
#include "raydist/mero/rational.hpp"
#include "raydist/odesolve/path.hpp"

namespace raydist::odesolve {

/// (w, w') of a solution of w'' + A w = 0; the true values are scaled by
/// exp(log_scale). accumulated_error is the summed relative local-error
/// bound of the steps taken.
struct TransportState {
  cplx w{};
  cplx w_prime{};
  double log_scale = 0.0;
  double accumulated_error = 0.0;
};

inline constexpr double kMinTol = 1e-13;
inline constexpr double kMaxTol = 1e-6;
/// Components are rescaled once their modulus leaves [1/kRenormalize, kRenormalize].
inline constexpr double kRenormalize = 1e150;

struct TransportOptions {
  double tol = 1e-10;
  /// When positive, steps whose change of arg w exceeds this are rejected,
  /// so the accumulated argument is a faithful continuous branch.
  double max_arg_step = 0.0;
  std::size_t max_steps = 5'000'000;
};

struct TrackedTransport {
  TransportState state;
  /// Continuous change of arg w along the path (when tracking is enabled).
  double arg_change = 0.0;
  std::size_t steps = 0;
};

/// Adaptive Dormand-Prince 5(4) transport with error per unit arclength
/// below tol. Throws DivergenceError on step-size collapse.
TransportState transport(const mero::RationalMap& A, const PathPlan& path, const TransportState& init, double tol);

TrackedTransport transport_tracked(const mero::RationalMap& A, const PathPlan& path, const TransportState& init,
                                   const TransportOptions& options);

/// Transports two solutions with shared steps and a shared scale, as needed
/// for Wronskians and monodromy matrices.
std::array<TransportState, 2> transport_pair(const mero::RationalMap& A, const PathPlan& path,
                                             const std::array<TransportState, 2>& init, double tol);

/// w1 w2' - w1' w2 in true (unscaled) units; throws RangeError on overflow.
cplx wronskian(const TransportState& s1, const TransportState& s2);

}  // namespace raydist::odesolve
