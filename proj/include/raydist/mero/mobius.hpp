#pragma once

#include "raydist/core.hpp"
#include "raydist/mero/mero_map.hpp"

namespace raydist::mero {

/// w -> (a w + b) / (c w + d) with ad - bc bounded away from zero.
class Mobius {
 public:
  Mobius(cplx a, cplx b, cplx c, cplx d);

  static Mobius identity() { return Mobius(1.0, 0.0, 0.0, 1.0); }
  static Mobius inversion() { return Mobius(0.0, 1.0, 1.0, 0.0); }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  bool diagonal() const { return b_ == cplx(0.0) && c_ == cplx(0.0); }

  /// Finite w only; returns infinity as a RangeError.
  cplx operator()(cplx w) const;

 private:
  cplx a_, b_, c_, d_;
};

MeroMap mobius_apply(const Mobius& L, const MeroMap& f);

/// |S(L o f)(z) - S(f)(z)|.
double mobius_invariance_residual(const Mobius& L, const MeroMap& f, cplx z);

}  // namespace raydist::mero
