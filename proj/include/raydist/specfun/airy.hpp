#pragma once

#include "raydist/core.hpp"

namespace raydist::specfun {

/// Ai and Ai' at a point. `est_abs_error` bounds the absolute error of `ai`
/// and `ai_prime` (4x the first omitted term plus accumulated rounding).
struct AiryValue {
  cplx ai;
  cplx ai_prime;
  double est_abs_error = 0.0;
};

/// Exponent-normalized Airy data: the true values are `ai * exp(log_scale)`
/// and `ai_prime * exp(log_scale)`. `est_error` is in mantissa units.
struct ScaledAiry {
  cplx ai;
  cplx ai_prime;
  double log_scale = 0.0;
  double est_error = 0.0;
};

// Branch layout. Inside kSeriesRadius the Maclaurin series is used. Between
// kSeriesRadius and kAsymptoticRadius the series is kept where Ai is not
// exponentially small (|arg z| >= pi/3) and the asymptotic expansion is used
// elsewhere. Beyond kAsymptoticRadius the asymptotic expansion is used for
// |arg z| <= 2pi/3 and the three-term connection identity covers the rest.
inline constexpr double kSeriesRadius = 6.5;
inline constexpr double kAsymptoticRadius = 8.5;

/// Largest zero index airy_zero accepts.
inline constexpr int kMaxAiryZeroIndex = 100000;

ScaledAiry airy_scaled(cplx z);

/// Unscaled Ai(z), Ai'(z). Throws RangeError when the values are not
/// representable in double precision.
AiryValue airy(cplx z);

/// |Ai(z) + w^-1 Ai(w^-1 z) + w Ai(w z)| with w = exp(2 pi i / 3).
double airy_connection_residual(cplx z);

/// The k-th (negative) zero of Ai, k >= 1, ordered by decreasing value.
double airy_zero(int k);

/// Leading-order location -(3 pi (4k - 1) / 8)^(2/3) of the k-th zero.
double airy_zero_estimate(int k);

}  // namespace raydist::specfun
