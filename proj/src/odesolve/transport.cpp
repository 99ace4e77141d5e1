#include "raydist/odesolve/transport.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "raydist/mero/polynomial.hpp"

namespace raydist::odesolve {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

using State = std::vector<cplx>;  // (w, w') pairs

class Integrator {
 public:
  Integrator(const mero::RationalMap& A, const TransportOptions& opt) : A_(A), opt_(opt) {
    if (!(opt.tol >= kMinTol && opt.tol <= kMaxTol)) {
      throw DomainError("transport tolerance must lie in [1e-13, 1e-6]");
    }
  }

  // Integrates y along the path; returns the accumulated relative error bound.
  void run(const PathPlan& path, State& y, double& log_scale, double& error, double& arg_change,
           std::size_t& steps) {
    if (path.empty()) throw DomainError("transport along an empty path");
    path.require_clearance(A_.poles(), 1e-6);
    double h = 0.0;
    double travelled = 0.0;
    for (const auto& seg : path.segments()) {
      const double len = seg.length();
      if (len == 0.0) continue;
      if (h == 0.0) h = std::min(len, 0.1 / (1.0 + std::sqrt(std::abs(A_(seg.from)))));
      double s = 0.0;
      while (s < len) {
        if (++steps > opt_.max_steps) throw DivergenceError("transport: step budget exhausted", travelled + s);
        const bool last = s + h >= len;
        const double step = last ? len - s : h;
        State next(y.size());
        const double err = attempt(seg, len, s, step, y, next);
        bool accept = err <= opt_.tol * step;
        double darg = 0.0;
        double ratio = err > 0.0 ? std::pow(opt_.tol * step / err, 0.25) : 5.0;
        if (accept && opt_.max_arg_step > 0.0) {
          if (next[0] == cplx(0.0)) throw ContourError("transported solution vanishes on the contour");
          darg = std::arg(next[0] / y[0]);
          if (std::abs(darg) > opt_.max_arg_step) {
            accept = false;
            ratio = 0.5 / 0.9;
          }
        }
        if (accept) {
          y.swap(next);
          s = last ? len : s + step;
          error += err + 4.0 * kEps;
          arg_change += darg;
          renormalize(y, log_scale);
          // A step clipped at the segment end says nothing about the scale.
          const double grown = std::clamp(0.9 * ratio, 0.2, 5.0) * step;
          h = last ? std::max(grown, h) : grown;
        } else {
          h = std::min(std::clamp(0.9 * ratio, 0.1, 0.9), 0.5) * step;
          if (h < 1e-13 * (1.0 + len)) {
            throw DivergenceError("transport: step size underflow", travelled + s);
          }
        }
      }
      travelled += len;
    }
  }

 private:
  // Derivative with respect to arclength along the segment.
  void rhs(const Segment& seg, double len, double s, const State& y, State& out) const {
    const double t = s / len;
    const cplx z = seg.point(t);
    const cplx v = seg.velocity(t) / len;
    const cplx a = A_(z);
    for (std::size_t k = 0; k < y.size(); k += 2) {
      out[k] = v * y[k + 1];
      out[k + 1] = -v * a * y[k];
    }
  }

  double attempt(const Segment& seg, double len, double s, double h, const State& y, State& next) const {
    const std::size_t n = y.size();
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);
    rhs(seg, len, s, y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(seg, len, s + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(seg, len, s + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(seg, len, s + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(seg, len, s + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(seg, len, s + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      next[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(seg, len, s + h, next, k7);

    // Error relative to the size of each solution pair.
    double err = 0.0;
    for (std::size_t k = 0; k < n; k += 2) {
      const double scale = std::max({std::abs(y[k]), std::abs(y[k + 1]), std::abs(next[k]), std::abs(next[k + 1])});
      if (!(scale > 0.0) || !std::isfinite(scale)) return std::numeric_limits<double>::infinity();
      for (std::size_t i = k; i < k + 2; ++i) {
        const cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        err = std::max(err, std::abs(e) / scale);
      }
    }
    return std::isfinite(err) ? err : std::numeric_limits<double>::infinity();
  }

  static void renormalize(State& y, double& log_scale) {
    double m = 0.0;
    for (cplx v : y) m = std::max(m, std::abs(v));
    if (m > kRenormalize || (m > 0.0 && m < 1.0 / kRenormalize)) {
      for (cplx& v : y) v /= m;
      log_scale += std::log(m);
    }
  }

  const mero::RationalMap& A_;
  TransportOptions opt_;
};

void require_nontrivial(const TransportState& s) {
  if (!is_finite(s.w) || !is_finite(s.w_prime)) throw DomainError("transport: non-finite initial data");
  if (std::max(std::abs(s.w), std::abs(s.w_prime)) < 1e-300) {
    throw DomainError("transport: initial data is the trivial solution");
  }
}

}  // namespace

TrackedTransport transport_tracked(const mero::RationalMap& A, const PathPlan& path, const TransportState& init,
                                   const TransportOptions& options) {
  require_nontrivial(init);
  Integrator integ(A, options);
  State y{init.w, init.w_prime};
  TrackedTransport out;
  double log_scale = init.log_scale, error = init.accumulated_error;
  integ.run(path, y, log_scale, error, out.arg_change, out.steps);
  out.state = TransportState{y[0], y[1], log_scale, error};
  return out;
}

TransportState transport(const mero::RationalMap& A, const PathPlan& path, const TransportState& init, double tol) {
  TransportOptions opt;
  opt.tol = tol;
  return transport_tracked(A, path, init, opt).state;
}

std::array<TransportState, 2> transport_pair(const mero::RationalMap& A, const PathPlan& path,
                                             const std::array<TransportState, 2>& init, double tol) {
  require_nontrivial(init[0]);
  require_nontrivial(init[1]);
  TransportOptions opt;
  opt.tol = tol;
  Integrator integ(A, opt);
  // Bring both solutions to a common scale.
  const double s = std::max(init[0].log_scale, init[1].log_scale);
  const double f0 = std::exp(init[0].log_scale - s), f1 = std::exp(init[1].log_scale - s);
  State y{init[0].w * f0, init[0].w_prime * f0, init[1].w * f1, init[1].w_prime * f1};
  double log_scale = s;
  double error = std::max(init[0].accumulated_error, init[1].accumulated_error);
  double arg = 0.0;
  std::size_t steps = 0;
  integ.run(path, y, log_scale, error, arg, steps);
  return {TransportState{y[0], y[1], log_scale, error}, TransportState{y[2], y[3], log_scale, error}};
}

cplx wronskian(const TransportState& s1, const TransportState& s2) {
  const cplx w = s1.w * s2.w_prime - s1.w_prime * s2.w;
  const double log_total = s1.log_scale + s2.log_scale;
  if (w != cplx(0.0) && std::log(std::abs(w)) + log_total > 700.0) throw RangeError("wronskian overflows");
  return w * std::exp(log_total);
}

}  // namespace raydist::odesolve
