#pragma once
// Reference computations written independently of the library code paths.

#include <cmath>
#include <complex>

namespace oracle {

using cld = std::complex<long double>;

/// Ai(z), Ai'(z) from the Maclaurin series in long double. Fine for |z| <= 6.
inline std::pair<cld, cld> airy_series(cld z) {
  const long double c1 = 0.355028053887817239260063186004183177L;  // Ai(0)
  const long double c2 = 0.258819403792806798405183560189203963L;  // -Ai'(0)
  // f = sum z^{3k} / (3k)! * prod(3j-2), g = sum z^{3k+1}/(3k+1)! * prod(3j-1)
  cld f = 1, g = z, fp = 0, gp = 1;
  cld tf = 1, tg = z;
  const cld z3 = z * z * z;
  for (int k = 1; k < 200; ++k) {
    const long double n = 3.0L * k;
    tf *= z3 / ((n - 1) * n);          // (3k-2)/(3k)! pattern: tf_k = tf_{k-1} z^3 / ((3k-1)(3k))
    tg *= z3 / (n * (n + 1));          // tg_k = tg_{k-1} z^3 / ((3k)(3k+1))
    f += tf;
    g += tg;
    fp += tf * n / z;
    gp += tg * (n + 1) / z;
    if (std::abs(tf) + std::abs(tg) < 1e-30L * (std::abs(f) + std::abs(g))) break;
  }
  if (z == cld(0)) fp = 0, gp = 1;
  return {c1 * f - c2 * g, c1 * fp - c2 * gp};
}

}  // namespace oracle
