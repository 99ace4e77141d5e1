#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "raydist/core.hpp"
#include "raydist/mero/jet.hpp"

namespace raydist::mero {

/// A value a in the extended plane: a finite complex number or infinity.
struct Target {
  bool infinite = false;
  cplx value{};

  static Target at(cplx v) { return Target{false, v}; }
  static Target zero() { return at(0.0); }
  static Target one() { return at(1.0); }
  static Target infinity() { return Target{true, {}}; }

  /// "0", "1", "inf", or "re,im".
  std::string label() const;
  static Target parse(const std::string& label);

  friend bool operator==(const Target&, const Target&) = default;
};

/// f = L(num / den) near a point, with num and den holomorphic there and L
/// the Mobius map w -> (m0 w + m1) / (m2 w + m3) given by `outer`. Evaluators
/// may switch the pair (num, den) and L from point to point, e.g. to keep a
/// recessive solution in the pair where a plain quotient would cancel.
struct QuotientJet {
  ScaledJet num;
  ScaledJet den;
  std::array<cplx, 4> outer{1.0, 0.0, 0.0, 1.0};
  /// Identifies the representation in use; values at points with the same
  /// chart belong to the same pair (num, den).
  int chart = 0;
};

/// Jet of f, or of 1/f when |f| > 1 (then `reciprocal` is set). The chart
/// value always has modulus <= 1, so poles appear as c[0] == 0 in the
/// reciprocal chart.
struct ChartJet {
  Jet3 jet;
  bool reciprocal = false;
};

/// A meromorphic function presented locally as a quotient of holomorphic
/// jets. Evaluators must be safe to call concurrently.
class MeroMap {
 public:
  using Evaluator = std::function<QuotientJet(cplx)>;

  MeroMap(std::string id, Evaluator evaluator, std::vector<cplx> declared_poles = {});

  const std::string& id() const { return id_; }
  const std::vector<cplx>& declared_poles() const { return poles_; }

  QuotientJet quotient(cplx z) const { return evaluator_(z); }
  ChartJet jet(cplx z) const;

  /// f(z); throws RangeError at a pole or when |f| overflows.
  cplx value(cplx z) const;
  /// log|f(z)|; -inf at zeros and +inf at poles.
  double log_abs(cplx z) const;
  /// |f(z) - a|, or |1/f(z)| for a = infinity. Saturates at DBL_MAX.
  double distance_to(cplx z, const Target& a) const;

  /// Holomorphic jet whose zeros are the a-points of f near z: num - w*den
  /// with L(w) = a, or den when L(inf) = a. Only its logarithmic derivative
  /// is meaningful across points, since evaluators may rescale the pair.
  ScaledJet a_point_jet(cplx z, const Target& a, int* chart = nullptr) const;

 private:
  std::string id_;
  Evaluator evaluator_;
  std::vector<cplx> poles_;
};

/// f(z) = z.
MeroMap identity_map();
/// f(z) = exp(z), exponent-normalized.
MeroMap exp_map();
/// f(z) = Ai(z).
MeroMap airy_map();
/// f(z) = e^{pi i/3} Ai(e^{2pi i/3} z) / Ai(e^{-2pi i/3} z). Zeros lie on
/// arg z = pi/3, poles on arg z = -pi/3, and 1-points on the negative axis.
MeroMap example1();

/// Jet of z -> Ai(lambda z), exponent-normalized.
ScaledJet airy_jet(cplx lambda, cplx z);

}  // namespace raydist::mero
