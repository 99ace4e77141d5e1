#include "raydist/mero/mero_map.hpp"

#include <cfloat>
#include <cstdio>
#include <limits>
#include <sstream>

#include "raydist/specfun/airy.hpp"

namespace raydist::mero {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_modulus(cplx v) { return v == cplx(0.0) ? -kInf : std::log(std::abs(v)); }

// mant * e^{shift}, splitting the exponential so that a representable
// product is not lost to an intermediate overflow.
Jet3 apply_scale(Jet3 mant, double shift) {
  if (std::abs(shift) <= 600.0) return mant * std::exp(shift);
  const double half = std::exp(0.5 * shift);
  return (mant * half) * half;
}

}  // namespace

std::string Target::label() const {
  if (infinite) return "inf";
  if (value == cplx(0.0)) return "0";
  if (value == cplx(1.0)) return "1";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g", value.real(), value.imag());
  return buf;
}

Target Target::parse(const std::string& label) {
  if (label == "inf" || label == "infinity") return infinity();
  const auto comma = label.find(',');
  try {
    if (comma == std::string::npos) return at(std::stod(label));
    return at(cplx(std::stod(label.substr(0, comma)), std::stod(label.substr(comma + 1))));
  } catch (const std::exception&) {
    throw DomainError("cannot parse target value '" + label + "'");
  }
}

MeroMap::MeroMap(std::string id, Evaluator evaluator, std::vector<cplx> declared_poles)
    : id_(std::move(id)), evaluator_(std::move(evaluator)), poles_(std::move(declared_poles)) {
  if (!evaluator_) throw DomainError("MeroMap requires an evaluator");
}

namespace {

// True numerator P and denominator R of f = P / R after applying the outer map.
struct Applied {
  ScaledJet p, r;
};

bool is_identity(const std::array<cplx, 4>& m) {
  return m[1] == cplx(0.0) && m[2] == cplx(0.0) && m[0] == cplx(1.0) && m[3] == cplx(1.0);
}

Applied apply_outer(const QuotientJet& q) {
  const auto& m = q.outer;
  if (m[1] == cplx(0.0) && m[2] == cplx(0.0)) {
    return {{q.num.mant * m[0], q.num.log_scale}, {q.den.mant * m[3], q.den.log_scale}};
  }
  const double s = std::max(q.num.log_scale, q.den.log_scale);
  const Jet3 n = apply_scale(q.num.mant, q.num.log_scale - s);
  const Jet3 d = apply_scale(q.den.mant, q.den.log_scale - s);
  return {{m[0] * n + m[1] * d, s}, {m[2] * n + m[3] * d, s}};
}

double log_value(const ScaledJet& j) { return log_modulus(j.mant.c[0]) + j.log_scale; }

// Preimage of a under the outer map; `infinite` is set when it is infinity.
struct Preimage {
  bool infinite = false;
  cplx w{};
};

Preimage outer_preimage(const std::array<cplx, 4>& m, const Target& a) {
  if (a.infinite) {
    if (m[2] == cplx(0.0)) return {true, {}};
    return {false, -m[3] / m[2]};
  }
  const cplx den = m[0] - m[2] * a.value;
  if (den == cplx(0.0)) return {true, {}};
  return {false, (m[3] * a.value - m[1]) / den};
}

}  // namespace

ChartJet MeroMap::jet(cplx z) const {
  const Applied f = apply_outer(quotient(z));
  const double log_num = log_value(f.p);
  const double log_den = log_value(f.r);
  if (log_num == -kInf && log_den == -kInf) {
    throw DomainError("MeroMap '" + id_ + "': numerator and denominator vanish together");
  }
  if (log_num <= log_den) {
    return ChartJet{apply_scale(f.p.mant / f.r.mant, f.p.log_scale - f.r.log_scale), false};
  }
  return ChartJet{apply_scale(f.r.mant / f.p.mant, f.r.log_scale - f.p.log_scale), true};
}

cplx MeroMap::value(cplx z) const {
  const ChartJet j = jet(z);
  if (!j.reciprocal) return j.jet.c[0];
  if (std::abs(j.jet.c[0]) < 1.0 / DBL_MAX) {
    throw RangeError("MeroMap '" + id_ + "': pole or overflow at evaluation point");
  }
  return 1.0 / j.jet.c[0];
}

double MeroMap::log_abs(cplx z) const {
  const Applied f = apply_outer(quotient(z));
  return log_value(f.p) - log_value(f.r);
}

ScaledJet MeroMap::a_point_jet(cplx z, const Target& a, int* chart) const {
  const QuotientJet q = quotient(z);
  if (chart) *chart = q.chart;
  const Preimage w = outer_preimage(q.outer, a);
  if (w.infinite) return q.den;
  if (w.w == cplx(0.0)) return q.num;
  const double s = std::max(q.num.log_scale, q.den.log_scale);
  ScaledJet h;
  h.mant = apply_scale(q.num.mant, q.num.log_scale - s) - w.w * apply_scale(q.den.mant, q.den.log_scale - s);
  h.log_scale = s;
  return h;
}

double MeroMap::distance_to(cplx z, const Target& a) const {
  const QuotientJet q = quotient(z);
  const Applied f = apply_outer(q);
  double log_dist = 0.0;
  if (a.infinite) {
    log_dist = log_value(f.r) - log_value(f.p);
  } else if (is_identity(q.outer)) {
    log_dist = log_value(a_point_jet(z, a)) - log_value(q.den);
  } else {
    // f - a = det(L) h / (R (m2 w_a + m3)), or det(L) den / (m2 R) when w_a = inf.
    const auto& m = q.outer;
    const Preimage w = outer_preimage(m, a);
    const cplx det = m[0] * m[3] - m[1] * m[2];
    const cplx coef = w.infinite ? m[2] : m[2] * w.w + m[3];
    const ScaledJet h = w.infinite ? q.den : a_point_jet(z, a);
    log_dist = log_modulus(det) + log_value(h) - log_value(f.r) - log_modulus(coef);
  }
  if (std::isnan(log_dist)) throw DomainError("MeroMap '" + id_ + "': indeterminate value");
  if (log_dist >= std::log(DBL_MAX)) return DBL_MAX;
  return std::exp(log_dist);
}

MeroMap identity_map() {
  return MeroMap("identity", [](cplx z) {
    return QuotientJet{{Jet3::variable(z), 0.0}, {Jet3::constant(1.0), 0.0}};
  });
}

MeroMap exp_map() {
  return MeroMap("exp", [](cplx z) {
    const cplx phase = unit_phase(z.imag());
    const Jet3 mant{{phase, phase, 0.5 * phase, phase / 6.0}};
    return QuotientJet{{mant, z.real()}, {Jet3::constant(1.0), 0.0}};
  });
}

ScaledJet airy_jet(cplx lambda, cplx z) {
  const specfun::ScaledAiry s = specfun::airy_scaled(lambda * z);
  const cplx l3 = lambda * lambda * lambda;
  const Jet3 mant{{s.ai, lambda * s.ai_prime, 0.5 * l3 * z * s.ai,
                   l3 * (s.ai + lambda * z * s.ai_prime) / 6.0}};
  return ScaledJet{mant, s.log_scale};
}

MeroMap airy_map() {
  return MeroMap("airy", [](cplx z) {
    return QuotientJet{airy_jet(1.0, z), {Jet3::constant(1.0), 0.0}};
  });
}

MeroMap example1() {
  return MeroMap("example1", [](cplx z) {
    static const cplx rot = unit_phase(2.0 * pi / 3.0);
    static const cplx prefactor = unit_phase(pi / 3.0);
    static const cplx tilt = std::conj(prefactor);
    // Around arg z = 0 both Ai(rot z) and Ai(conj(rot) z) are dominant and
    // their quotient loses everything but its leading digits; there
    // f = 1 - e^{-pi i/3} Ai(z) / Ai(conj(rot) z) keeps the recessive Ai(z).
    if (std::abs(std::arg(z)) < pi / 3.0) {
      return QuotientJet{airy_jet(1.0, z), airy_jet(std::conj(rot), z), {-tilt, 1.0, 0.0, 1.0}, 1};
    }
    return QuotientJet{airy_jet(rot, z), airy_jet(std::conj(rot), z), {prefactor, 0.0, 0.0, 1.0}};
  });
}

}  // namespace raydist::mero
