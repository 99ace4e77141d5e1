#pragma once

#include <vector>

#include "raydist/core.hpp"
#include "raydist/mero/rational.hpp"
#include "raydist/odesolve/transport.hpp"

namespace raydist::odesolve {

struct Lemma7Result {
  int k = 0;  ///< zeros of w counted on the interval
  int p = 0;  ///< distinct real zeros of (A(z) - conj A(conj z)) / 2i
  int n = 0;  ///< degree of A
  bool holds = false;
  /// Counts inside rectangles of shrinking half-height; k is the last one.
  std::vector<double> heights;
  std::vector<int> counts;
};

/// Number of distinct real roots of a real polynomial given lowest degree
/// first (roots closer than 1e-6 relative are merged).
int distinct_real_roots(const std::vector<double>& coeffs);

/// Real-zero count of the solution of w'' + A w = 0 with the given data at
/// x_lo, for a nonreal polynomial A. Zeros are counted by the argument of w
/// around rectangles [x_lo, x_hi] x [-h, h] with h shrinking from 1e-2 to
/// 1e-8 times the interval length. Throws DomainError for real or
/// non-polynomial A and ContourError when w vanishes at an endpoint.
Lemma7Result lemma7_verdict(const mero::RationalMap& A, const TransportState& init, double x_lo, double x_hi,
                            double tol = 1e-10);

struct Lemma14Options {
  double scan_radius = 10.0;
  double tol = 1e-11;
  /// Sampling step along the real axis when bracketing sign changes.
  double real_step = 0.05;
};

struct Lemma14Result {
  bool all_real = true;
  bool inconclusive = false;
  int sector_count = 0;            ///< zeros inside the truncated sector
  std::vector<double> real_zeros;  ///< located zeros on (x1, x1 + R)
  std::vector<cplx> offenders;     ///< located non-real zeros
};

/// Scans {|arg(z - x1)| < alpha, |z - x1| <= R} for zeros of the solution u
/// of u'' + A u = 0 with real data at x1, where A is real on the axis with
/// A(z) ~ c z^gamma. Requires gamma > -2, 0 < alpha < pi, (2 + gamma) alpha < pi,
/// c > 0, u(x1) != 0 and no pole of A in the sector.
Lemma14Result lemma14_verdict(const mero::RationalMap& A, double gamma, double c, double alpha, double x1,
                              const TransportState& u_init, const Lemma14Options& options = {});

}  // namespace raydist::odesolve
