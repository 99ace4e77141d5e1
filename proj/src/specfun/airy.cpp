#include "raydist/specfun/airy.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace raydist::specfun {
namespace {

using ldouble = long double;
using lcplx = std::complex<long double>;

// Ai(0) and -Ai'(0) to 21 significant digits.
constexpr ldouble kAi0 = 0.355028053887817239260L;
constexpr ldouble kMinusAip0 = 0.258819403792806798405L;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr ldouble kEpsL = std::numeric_limits<ldouble>::epsilon();
constexpr double kSafety = 4.0;

const cplx kRot = unit_phase(2.0 * pi / 3.0);  // e^{2 pi i/3}
const cplx kRotInv = std::conj(kRot);          // e^{-2 pi i/3}

// Ai(w z), Ai'(w z) for a cube root of unity w, from the series in z. The
// series is in z^3 apart from the factors w, so no rounding enters through w z.
ScaledAiry maclaurin(cplx z, lcplx w = 1.0L) {
  const lcplx zl(z.real(), z.imag());
  const lcplx z3 = zl * zl * zl;

  lcplx f_term(1.0L), g_term(zl), fp_term(0.5L * zl * zl), gp_term(1.0L);
  lcplx f(f_term), g(g_term), fp(fp_term), gp(gp_term);
  // Coefficient-weighted sums of |terms|: rounding in the partial sums is a
  // small multiple of epsilon times these.
  ldouble mag_ai = kAi0 * std::abs(f_term) + kMinusAip0 * std::abs(g_term);
  ldouble mag_aip = kAi0 * std::abs(fp_term) + kMinusAip0 * std::abs(gp_term);

  ldouble omitted = 0.0L;
  for (int k = 1; k < 200; ++k) {
    const ldouble kk = 3.0L * k;
    f_term *= z3 / ((kk - 1.0L) * kk);
    g_term *= z3 / (kk * (kk + 1.0L));
    gp_term *= z3 / ((kk - 2.0L) * kk);
    if (k >= 2) fp_term *= z3 / ((kk - 3.0L) * (kk - 1.0L));

    const ldouble step_ai = kAi0 * std::abs(f_term) + kMinusAip0 * std::abs(g_term);
    const ldouble step_aip = kAi0 * std::abs(fp_term) + kMinusAip0 * std::abs(gp_term);
    if (std::max(step_ai, step_aip) <= 1e-22L * (mag_ai + mag_aip) && k > 2) {
      omitted = std::max(step_ai, step_aip);
      break;
    }
    f += f_term;
    g += g_term;
    gp += gp_term;
    if (k >= 2) fp += fp_term;
    mag_ai += step_ai;
    mag_aip += step_aip;
  }

  const lcplx ai = kAi0 * f - kMinusAip0 * w * g;
  const lcplx aip = kAi0 * w * w * fp - kMinusAip0 * gp;
  ScaledAiry out;
  out.ai = cplx(static_cast<double>(ai.real()), static_cast<double>(ai.imag()));
  out.ai_prime = cplx(static_cast<double>(aip.real()), static_cast<double>(aip.imag()));
  out.log_scale = 0.0;
  out.est_error = kSafety * static_cast<double>(omitted) +
                  static_cast<double>(16.0L * kEpsL * std::max(mag_ai, mag_aip)) +
                  kEps * std::max(std::abs(out.ai), std::abs(out.ai_prime));
  return out;
}

constexpr int kAsymptoticTerms = 120;

// u_k of the Airy asymptotic expansion; v_k = -(6k+1)/(6k-1) u_k.
const std::array<double, kAsymptoticTerms>& asymptotic_u() {
  static const std::array<double, kAsymptoticTerms> u = [] {
    std::array<double, kAsymptoticTerms> c{};
    c[0] = 1.0;
    for (int k = 1; k < kAsymptoticTerms; ++k) {
      const double kk = k;
      c[k] = c[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216.0 * kk);
    }
    return c;
  }();
  return u;
}

// Valid for |arg z| <= 2 pi / 3 and |z| large.
ScaledAiry asymptotic(cplx z) {
  const auto& u = asymptotic_u();
  const cplx zeta = (2.0 / 3.0) * z * std::sqrt(z);
  const cplx inv_zeta = 1.0 / zeta;

  cplx sum_u(1.0), sum_v(1.0);
  cplx power(1.0);
  double last = std::numeric_limits<double>::infinity();
  double omitted = 0.0;
  for (int k = 1; k < kAsymptoticTerms; ++k) {
    power *= -inv_zeta;
    const double vk = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    const double size = std::abs(power) * std::abs(vk);
    // Optimal truncation: stop once terms start growing or reach roundoff.
    if (size >= last || size < 0.25 * kEps) {
      omitted = size;
      break;
    }
    last = size;
    sum_u += u[k] * power;
    sum_v += vk * power;
    omitted = size;
  }

  const cplx quarter = std::pow(z, 0.25);
  const cplx phase = unit_phase(-zeta.imag());
  const double two_sqrt_pi = 2.0 * std::sqrt(pi);
  ScaledAiry out;
  out.ai = phase * sum_u / (two_sqrt_pi * quarter);
  out.ai_prime = -phase * quarter * sum_v / two_sqrt_pi;
  out.log_scale = -zeta.real();
  const double prefactor = std::abs(phase / (two_sqrt_pi * quarter)) + std::abs(quarter) / two_sqrt_pi;
  // Rounding in zeta propagates through the phase and exp(-zeta) with
  // condition number about |zeta|.
  out.est_error = kSafety * (omitted + 2.0 * kEps) * prefactor +
                  2.0 * kEps * (1.0 + std::abs(zeta)) * (std::abs(out.ai) + std::abs(out.ai_prime));
  return out;
}

// a * x + b * y with x, y in possibly different exponent scales.
ScaledAiry combine(cplx a, const ScaledAiry& x, cplx b, const ScaledAiry& y, cplx a_prime, cplx b_prime) {
  const double s = std::max(x.log_scale, y.log_scale);
  const double ex = std::exp(x.log_scale - s);
  const double ey = std::exp(y.log_scale - s);
  ScaledAiry out;
  out.ai = a * x.ai * ex + b * y.ai * ey;
  out.ai_prime = a_prime * x.ai_prime * ex + b_prime * y.ai_prime * ey;
  out.log_scale = s;
  out.est_error = x.est_error * ex + y.est_error * ey +
                  kEps * (std::abs(x.ai) * ex + std::abs(y.ai) * ey);
  return out;
}

// Rounding the rotated argument w z moves Ai(w z) by about eps |z| |Ai'(w z)|.
double argument_rounding(cplx z, const ScaledAiry& v) {
  return 2.0 * kEps * std::abs(z) * (std::abs(v.ai_prime) + std::abs(z) * std::abs(v.ai));
}

ScaledAiry upper_half(cplx z);

// Ai(z) = -w^-1 Ai(w^-1 z) - w Ai(w z), Ai'(z) = -w Ai'(w^-1 z) - w^-1 Ai'(w z).
ScaledAiry via_connection(cplx z) {
  const ScaledAiry lo = upper_half(kRotInv * z);
  const cplx rotated = kRot * z;
  ScaledAiry hi = upper_half(std::conj(rotated));
  hi.ai = std::conj(hi.ai);
  hi.ai_prime = std::conj(hi.ai_prime);
  ScaledAiry out = combine(-kRotInv, lo, -kRot, hi, -kRot, -kRotInv);
  out.est_error += argument_rounding(z, lo) * std::exp(lo.log_scale - out.log_scale) +
                   argument_rounding(z, hi) * std::exp(hi.log_scale - out.log_scale);
  return out;
}

// Requires Im z >= 0.
ScaledAiry upper_half(cplx z) {
  const double r = std::abs(z);
  if (r <= kSeriesRadius) return maclaurin(z);
  const double theta = std::arg(z);
  if (r <= kAsymptoticRadius) {
    return theta >= pi / 3.0 ? maclaurin(z) : asymptotic(z);
  }
  if (theta <= 2.0 * pi / 3.0) return asymptotic(z);
  return via_connection(z);
}

std::string describe(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

ScaledAiry airy_scaled(cplx z) {
  if (!is_finite(z)) throw DomainError("airy: non-finite argument");
  if (z.imag() < 0.0) {
    ScaledAiry v = upper_half(std::conj(z));
    v.ai = std::conj(v.ai);
    v.ai_prime = std::conj(v.ai_prime);
    return v;
  }
  ScaledAiry v = upper_half(z);
  if (z.imag() == 0.0) {
    v.ai.imag(0.0);
    v.ai_prime.imag(0.0);
  }
  return v;
}

AiryValue airy(cplx z) {
  const ScaledAiry s = airy_scaled(z);
  const double mag = std::max(std::abs(s.ai), std::abs(s.ai_prime));
  if (mag > 0.0 && s.log_scale + std::log(mag) > 700.0) {
    throw RangeError("airy: |Ai(z)| overflows double precision at z = " + describe(z) +
                     "; use airy_scaled");
  }
  const double factor = std::exp(s.log_scale);
  return AiryValue{s.ai * factor, s.ai_prime * factor, s.est_error * factor};
}

double airy_connection_residual(cplx z) {
  if (!is_finite(z)) throw DomainError("airy_connection_residual: non-finite argument");
  // Where the rotated point is served by the series, evaluate it at the exact
  // rotation; rounding w z to double would perturb the large values by about
  // |z|^{3/2} eps |Ai|.
  const auto at = [&](cplx w, lcplx wl) {
    const cplx p = w * z;
    const double r = std::abs(p);
    const bool series = r <= kSeriesRadius || (r <= kAsymptoticRadius && std::abs(std::arg(p)) >= pi / 3.0);
    return series ? maclaurin(z, wl) : airy_scaled(p);
  };
  const lcplx rot(-0.5L, 0.866025403784438646763723170752936183L);
  const ScaledAiry a = airy_scaled(z);
  const ScaledAiry b = at(kRotInv, std::conj(rot));
  const ScaledAiry c = at(kRot, rot);
  const double s = std::max({a.log_scale, b.log_scale, c.log_scale});
  const cplx sum = a.ai * std::exp(a.log_scale - s) + kRotInv * b.ai * std::exp(b.log_scale - s) +
                   kRot * c.ai * std::exp(c.log_scale - s);
  const double mag = std::abs(sum);
  if (mag > 0.0 && s + std::log(mag) > 700.0) {
    throw RangeError("airy_connection_residual: residual overflows at z = " + describe(z));
  }
  return mag * std::exp(s);
}

double airy_zero_estimate(int k) {
  const double t = 3.0 * pi * (4.0 * k - 1.0) / 8.0;
  return -std::pow(t, 2.0 / 3.0);
}

double airy_zero(int k) {
  if (k < 1) throw DomainError("airy_zero: index must be >= 1");
  if (k > kMaxAiryZeroIndex) {
    throw RangeError("airy_zero: index " + std::to_string(k) + " beyond the supported range");
  }
  const double t = 3.0 * pi * (4.0 * k - 1.0) / 8.0;
  // Second-order correction of the leading estimate; within 1e-3 of the zero.
  const double guess = -std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t));
  const auto ai = [](double x) { return airy_scaled(cplx(x, 0.0)).ai.real(); };

  // Zeros are spaced by about pi / sqrt|x|; bracket within a quarter spacing.
  const double half_width = 0.25 * pi / std::sqrt(std::abs(guess));
  double lo = guess - half_width, hi = guess + half_width;
  double f_lo = ai(lo), f_hi = ai(hi);
  if (f_lo * f_hi > 0.0) {
    throw RangeError("airy_zero: failed to bracket zero " + std::to_string(k));
  }

  double x = guess;
  for (int it = 0; it < 100; ++it) {
    const ScaledAiry v = airy_scaled(cplx(x, 0.0));
    const double f = v.ai.real(), fp = v.ai_prime.real();
    if (f == 0.0) return x;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = f;
    } else {
      hi = x;
    }
    double next = x - f / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 4.0 * kEps * std::abs(x)) break;
  }
  return x;
}

}  // namespace raydist::specfun
