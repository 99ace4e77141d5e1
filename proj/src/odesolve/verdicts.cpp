#include "raydist/odesolve/verdicts.hpp"

#include <algorithm>

#include "raydist/mero/polynomial.hpp"
#include "raydist/odesolve/schwarzian_solver.hpp"
#include "raydist/rootscan/scan.hpp"

namespace raydist::odesolve {

namespace {

constexpr double kRealRootImag = 1e-7;
constexpr double kMergeRel = 1e-6;

// Zeros inside the loop `first` followed by `second` reversed. Both routes
// start from the same data and are integrated forwards, so neither leg has to
// recover a recessive solution against a dominant one.
int enclosed_zeros(const mero::RationalMap& A, const TransportState& start, const PathPlan& first,
                   const PathPlan& second, double tol) {
  TransportOptions opts;
  opts.tol = tol;
  opts.max_arg_step = pi / 3.0;
  const TrackedTransport a = transport_tracked(A, first, start, opts);
  const TrackedTransport b = transport_tracked(A, second, start, opts);
  const cplx ratio = b.state.w / a.state.w;
  const double closing = std::arg(ratio);
  const double mismatch = std::abs(std::log(std::abs(ratio)) + b.state.log_scale - a.state.log_scale);
  if (!(std::abs(closing) < 0.25 * pi) || !(mismatch < 0.25)) {
    throw ContourError("zero count: the two routes disagree where they meet (arg " + std::to_string(closing) + ", log " + std::to_string(mismatch) + ")");
  }
  const double turns = (a.arg_change + closing - b.arg_change) / (2.0 * pi);
  const double count = std::round(turns);
  if (std::abs(turns - count) > 0.25) {
    throw ContourError("zero count: argument change is not a whole number of turns");
  }
  return static_cast<int>(count);
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (cplx c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

int distinct_real_roots(const std::vector<double>& coeffs) {
  double scale = 0.0;
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw DomainError("distinct_real_roots: non-finite coefficient");
    scale = std::max(scale, std::abs(c));
  }
  if (scale == 0.0) throw DomainError("distinct_real_roots: zero polynomial");
  std::vector<cplx> p;
  for (double c : coeffs) p.emplace_back(std::abs(c) <= 1e-14 * scale ? 0.0 : c);
  p = mero::trim(p);
  if (p.size() <= 1) return 0;
  std::vector<double> real;
  for (cplx r : mero::poly_roots(p)) {
    if (std::abs(r.imag()) <= kRealRootImag * (1.0 + std::abs(r))) real.push_back(r.real());
  }
  std::sort(real.begin(), real.end());
  int distinct = 0;
  for (std::size_t i = 0; i < real.size(); ++i) {
    if (i == 0 || real[i] - real[i - 1] > kMergeRel * (1.0 + std::abs(real[i]))) ++distinct;
  }
  return distinct;
}

Lemma7Result lemma7_verdict(const mero::RationalMap& A, const TransportState& init, double x_lo, double x_hi,
                            double tol) {
  if (!A.is_polynomial()) throw DomainError("lemma7_verdict: A must be a polynomial");
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !(x_lo < x_hi)) {
    throw DomainError("lemma7_verdict: need a finite interval x_lo < x_hi");
  }
  if (!(A.max_imag_coefficient() > 1e-10)) throw DomainError("lemma7_verdict: A is real");
  if (init.w == 0.0 && init.w_prime == 0.0) throw DomainError("lemma7_verdict: trivial solution");

  Lemma7Result out;
  out.n = A.num_degree();
  std::vector<double> im;
  for (cplx c : A.num()) im.push_back(c.imag());
  out.p = distinct_real_roots(im);

  const double len = x_hi - x_lo;
  const double h_max = 1e-2 * len;
  if (std::abs(init.w) <= 1e-9 * len * std::abs(init.w_prime)) {
    throw ContourError("lemma7_verdict: solution vanishes at the left endpoint; adjust the interval");
  }

  // Nodes along the axis, each cell short enough that a loop around it is
  // well conditioned; interior nodes are moved off near-zeros of w.
  double a_max = 0.0;
  for (int i = 0; i <= 200; ++i) a_max = std::max(a_max, std::abs(A(x_lo + len * i / 200.0)));
  const double cell = std::min(len / 20.0, 0.5 / std::sqrt(a_max + 1e-300));
  std::vector<double> nodes{x_lo};
  std::vector<TransportState> states{init};
  while (nodes.back() < x_hi) {
    const double x = nodes.back();
    double xn = 0.0;
    TransportState sn;
    for (double frac : {1.0, 0.6, 0.8, 0.45}) {
      xn = x + frac * cell;
      if (xn > x_hi - 0.25 * cell) xn = x_hi;
      sn = transport(A, PathPlan::line(x, xn), states.back(), tol);
      if (xn == x_hi || std::abs(sn.w) > 2.0 * h_max * std::abs(sn.w_prime)) break;
    }
    if (xn == x_hi && std::abs(sn.w) <= 1e-9 * len * std::abs(sn.w_prime)) {
      throw ContourError("lemma7_verdict: solution vanishes at the right endpoint; adjust the interval");
    }
    nodes.push_back(xn);
    states.push_back(sn);
  }

  TransportOptions opts;
  opts.tol = tol;
  opts.max_arg_step = pi / 3.0;
  for (double rel = 1e-2; rel >= 1e-8 * (1.0 - 1e-9); rel *= 1e-2) {
    const double h = rel * len;
    int total = 0;
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
      const double x0 = nodes[j], x1 = nodes[j + 1];
      const PathPlan loop = PathPlan::polyline({x0, cplx(x0, -h), cplx(x1, -h), cplx(x1, h), cplx(x0, h), x0});
      const double turns = transport_tracked(A, loop, states[j], opts).arg_change / (2.0 * pi);
      if (std::abs(turns - std::round(turns)) > 0.25) {
        throw ContourError("lemma7_verdict: argument change is not a whole number of turns");
      }
      total += static_cast<int>(std::round(turns));
    }
    out.heights.push_back(h);
    out.counts.push_back(total);
  }
  out.k = out.counts.back();
  out.holds = out.k <= out.p + 1;
  return out;
}

Lemma14Result lemma14_verdict(const mero::RationalMap& A, double gamma, double c, double alpha, double x1,
                              const TransportState& u_init, const Lemma14Options& options) {
  if (!(gamma > -2.0)) throw DomainError("lemma14_verdict: need gamma > -2");
  if (!(alpha > 0.0 && alpha < pi)) throw DomainError("lemma14_verdict: need 0 < alpha < pi");
  if (!((2.0 + gamma) * alpha < pi)) throw DomainError("lemma14_verdict: need (2 + gamma) alpha < pi");
  if (!(c > 0.0)) throw DomainError("lemma14_verdict: need c > 0");
  if (!std::isfinite(x1)) throw DomainError("lemma14_verdict: x1 must be finite");
  const double radius = options.scan_radius;
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("lemma14_verdict: invalid scan radius");
  if (!(options.real_step > 0.0)) throw DomainError("lemma14_verdict: invalid real step");

  const double scale = std::max(max_abs(A.num()), max_abs(A.den()));
  if (A.max_imag_coefficient() > 1e-12 * scale) throw DomainError("lemma14_verdict: A is not real on the axis");
  const double exponent = A.num_degree() - A.den_degree();
  const double lead = (A.num().back() / A.den().back()).real();
  if (std::abs(exponent - gamma) > 1e-12 || std::abs(lead - c) > 1e-8 * std::abs(c)) {
    throw DomainError("lemma14_verdict: A is not asymptotic to c z^gamma");
  }
  const double data_scale = std::max(std::abs(u_init.w), std::abs(u_init.w_prime));
  if (!(data_scale > 0.0)) throw DomainError("lemma14_verdict: trivial solution");
  if (std::abs(u_init.w.imag()) > 1e-14 * data_scale || std::abs(u_init.w_prime.imag()) > 1e-14 * data_scale) {
    throw DomainError("lemma14_verdict: initial data must be real");
  }
  if (std::abs(u_init.w) <= 1e-12 * data_scale) {
    throw DomainError("lemma14_verdict: u(x1) must be nonzero (the sector vertex lies on the contour)");
  }
  const std::vector<cplx> poles = A.poles();
  for (cplx p : poles) {
    const cplx d = p - x1;
    if (std::abs(d) < 1e-6 || std::abs(std::arg(d)) <= alpha) {
      throw DomainError("lemma14_verdict: A has a pole in the closed sector");
    }
  }

  Lemma14Result out;
  const double tol = std::clamp(options.tol, kMinTol, kMaxTol);
  // The sector is cut along an interior ray into two loops; solutions grow
  // away from the axis, so every leg runs outwards. Real zeros stay off the
  // cut, and a second cut direction is tried if the first hits a zero.
  bool counted = false;
  for (double cut : {0.37, -0.29, 0.53}) {
    const double phi = cut * alpha;
    const cplx lower = x1 + std::polar(radius, -alpha), upper = x1 + std::polar(radius, alpha);
    PathPlan via_cut_lo = PathPlan::line(x1, x1 + std::polar(radius, phi));
    via_cut_lo.append(Segment::arc(x1, radius, phi, -alpha));
    PathPlan via_cut_hi = PathPlan::line(x1, x1 + std::polar(radius, phi));
    via_cut_hi.append(Segment::arc(x1, radius, phi, alpha));
    try {
      out.sector_count = enclosed_zeros(A, u_init, PathPlan::line(x1, lower), via_cut_lo, tol) +
                         enclosed_zeros(A, u_init, via_cut_hi, PathPlan::line(x1, upper), tol);
      counted = true;
      break;
    } catch (const ContourError&) {
    }
  }
  if (!counted) throw ContourError("lemma14_verdict: no cut direction gave a clean zero count");

  // Real zeros by sign changes of u on (x1, x1 + R), refined by safeguarded Newton.
  TransportState left = u_init;
  double xl = x1;
  const int steps = static_cast<int>(std::ceil(radius / options.real_step));
  for (int i = 1; i <= steps; ++i) {
    const double xr = x1 + radius * i / steps;
    const TransportState right = transport(A, PathPlan::line(xl, xr), left, tol);
    const double ul = left.w.real(), ur = right.w.real();
    if (ur == 0.0 || (ul < 0.0) != (ur < 0.0)) {
      double a = xl, b = xr, x = xl;
      TransportState s = left;
      for (int it = 0; it < 100; ++it) {
        double next = x - (s.w / s.w_prime).real();
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        s = transport(A, PathPlan::line(xl, next), left, tol);
        const bool same_as_left = (s.w.real() < 0.0) == (ul < 0.0);
        if (same_as_left) a = next;
        else b = next;
        const double step = std::abs(next - x);
        x = next;
        if (s.w.real() == 0.0 || step <= options.tol * (1.0 + std::abs(x))) break;
      }
      if (out.real_zeros.empty() || x - out.real_zeros.back() > 1e-9 * (1.0 + std::abs(x))) {
        out.real_zeros.push_back(x);
      }
    }
    left = right;
    xl = xr;
  }

  out.inconclusive = out.sector_count == 0;
  if (out.sector_count != static_cast<int>(out.real_zeros.size())) {
    // Locate everything in the sector; u is entire there, so no chart switches are needed.
    const mero::MeroMap shifted(
        "lemma14_solution",
        [A, x1, u_init, tol](cplx zeta) {
          const cplx z = x1 + zeta;
          const TransportState s = zeta == 0.0 ? u_init : transport(A, PathPlan::line(x1, z), u_init, tol);
          return mero::QuotientJet{solution_jet(A, z, s), mero::ScaledJet{mero::Jet3::constant(1.0), 0.0}};
        });
    rootscan::LocateOptions lo;
    lo.tol = options.tol;
    const auto roots = rootscan::locate_roots(shifted, rootscan::Region::annulus_sector(0.0, radius, -alpha, alpha),
                                              mero::Target::zero(), lo, Exec::parallel);
    for (const auto& r : roots) {
      const cplx z = x1 + r.location;
      if (std::abs(z.imag()) > 1e-8 * std::abs(z)) out.offenders.push_back(z);
    }
  }
  out.all_real = out.offenders.empty();
  return out;
}

}  // namespace raydist::odesolve
