#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "raydist/core.hpp"

namespace raydist::mero {

/// Third-order jet: Taylor coefficients c[k] = f^(k)(z0) / k! for k = 0..3,
/// with truncated-polynomial arithmetic.
struct Jet3 {
  std::array<cplx, 4> c{};

  static constexpr Jet3 constant(cplx v) { return Jet3{{v, 0.0, 0.0, 0.0}}; }
  /// The identity map expanded at z0.
  static constexpr Jet3 variable(cplx z0) { return Jet3{{z0, 1.0, 0.0, 0.0}}; }
  /// Builds a jet from derivative values f, f', f'', f'''.
  static Jet3 from_derivatives(cplx d0, cplx d1, cplx d2, cplx d3) {
    return Jet3{{d0, d1, d2 / 2.0, d3 / 6.0}};
  }

  cplx value() const { return c[0]; }
  /// k-th derivative, k <= 3.
  cplx derivative(int k) const {
    constexpr double fact[4] = {1.0, 1.0, 2.0, 6.0};
    return c[static_cast<std::size_t>(k)] * fact[k];
  }
  double max_abs() const {
    return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
  }
  bool finite() const { return is_finite(c[0]) && is_finite(c[1]) && is_finite(c[2]) && is_finite(c[3]); }

  Jet3& operator+=(const Jet3& o) {
    for (std::size_t k = 0; k < 4; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    for (std::size_t k = 0; k < 4; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet3& operator*=(cplx s) {
    for (auto& v : c) v *= s;
    return *this;
  }
};

inline Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
inline Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
inline Jet3 operator-(Jet3 a) {
  for (auto& v : a.c) v = -v;
  return a;
}
inline Jet3 operator*(Jet3 a, cplx s) { return a *= s; }
inline Jet3 operator*(cplx s, Jet3 a) { return a *= s; }

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  Jet3 r;
  r.c[0] = a.c[0] * b.c[0];
  r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0];
  r.c[2] = a.c[0] * b.c[2] + a.c[1] * b.c[1] + a.c[2] * b.c[0];
  r.c[3] = a.c[0] * b.c[3] + a.c[1] * b.c[2] + a.c[2] * b.c[1] + a.c[3] * b.c[0];
  return r;
}

/// Requires b.c[0] != 0.
inline Jet3 operator/(const Jet3& a, const Jet3& b) {
  if (b.c[0] == cplx(0.0)) throw DomainError("jet division by a jet with zero constant term");
  Jet3 q;
  const cplx inv = 1.0 / b.c[0];
  q.c[0] = a.c[0] * inv;
  q.c[1] = (a.c[1] - b.c[1] * q.c[0]) * inv;
  q.c[2] = (a.c[2] - b.c[1] * q.c[1] - b.c[2] * q.c[0]) * inv;
  q.c[3] = (a.c[3] - b.c[1] * q.c[2] - b.c[2] * q.c[1] - b.c[3] * q.c[0]) * inv;
  return q;
}

/// g(u) for an outer function with derivatives g0..g3 at u.c[0].
inline Jet3 compose(cplx g0, cplx g1, cplx g2, cplx g3, const Jet3& u) {
  const cplx u1 = u.c[1], u2 = u.c[2], u3 = u.c[3];
  return Jet3{{g0, g1 * u1, g1 * u2 + 0.5 * g2 * u1 * u1,
               g1 * u3 + g2 * u1 * u2 + g3 * u1 * u1 * u1 / 6.0}};
}

inline Jet3 exp(const Jet3& u) {
  const cplx e = std::exp(u.c[0]);
  return compose(e, e, e, e, u);
}

inline Jet3 sin(const Jet3& u) {
  const cplx s = std::sin(u.c[0]), co = std::cos(u.c[0]);
  return compose(s, co, -s, -co, u);
}

inline Jet3 cos(const Jet3& u) {
  const cplx s = std::sin(u.c[0]), co = std::cos(u.c[0]);
  return compose(co, -s, -co, s, u);
}

inline Jet3 reciprocal(const Jet3& u) { return Jet3::constant(1.0) / u; }

/// A jet whose true value is mant * exp(log_scale).
struct ScaledJet {
  Jet3 mant;
  double log_scale = 0.0;
};

}  // namespace raydist::mero
