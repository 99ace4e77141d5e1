#pragma once

#include <array>
#include <utility>

#include <json.hpp>

#include "raydist/core.hpp"
#include "raydist/mero/rational.hpp"
#include "raydist/odesolve/path.hpp"

namespace raydist::odesolve {

/// Transport matrix of (w, w') around a loop: (w, w')_end = M (w, w')_start.
/// Entries are row-major and scaled by exp(log_scale).
struct MonodromyMatrix {
  std::array<cplx, 4> m{};
  double log_scale = 0.0;
  double accumulated_error = 0.0;

  cplx trace() const { return m[0] + m[3]; }
  /// Determinant of the unscaled matrix; 1 for a trace-free system.
  cplx det() const;
};

/// Minimum number of arc pieces used for monodromy loops.
inline constexpr int kLoopPieces = 720;

/// Counterclockwise circle about 0 of radius 2 max|pole| (radius 1 when A is
/// a polynomial), based on the positive real axis.
PathPlan monodromy_loop(const mero::RationalMap& A, int pieces = kLoopPieces);

/// Requires a closed loop.
MonodromyMatrix monodromy(const mero::RationalMap& A, const PathPlan& loop, double tol);

/// ||M - (tr M / 2) I||_F / ||M||_F. Zero exactly when M is scalar.
double projective_defect(const MonodromyMatrix& M);
double projective_defect(const std::array<cplx, 4>& m);

/// b = -27p/2 and c = (4a^2 + 36a + 45) / (72p).
std::pair<double, double> elfving_coefficients(double a, double p);

/// R(w) = -c + a/(w - p) + b/(w - p)^2.
mero::RationalMap elfving_r(double a, double b, double c, double p);

/// Q(z) = z R(z^3), written as e^{3 i theta} z R~(z^3) with R~(inf) > 0 by
/// taking theta = 0 when -c > 0 and theta = pi/3 (R~ = -R) otherwise.
mero::RationalMap elfving_q(double a, double b, double c, double p);

nlohmann::json monodromy_report(const MonodromyMatrix& M, double tol, const PathPlan& loop);

}  // namespace raydist::odesolve
