#include "raydist/odesolve/monodromy.hpp"

#include <algorithm>

#include "raydist/mero/ray.hpp"
#include "raydist/odesolve/transport.hpp"

namespace raydist::odesolve {

cplx MonodromyMatrix::det() const {
  return (m[0] * m[3] - m[1] * m[2]) * std::exp(2.0 * log_scale);
}

PathPlan monodromy_loop(const mero::RationalMap& A, int pieces) {
  double reach = 0.0;
  for (cplx p : A.poles()) reach = std::max(reach, std::abs(p));
  const double radius = reach > 0.0 ? 2.0 * reach : 1.0;
  return PathPlan::circle(0.0, radius, std::max(pieces, kLoopPieces));
}

MonodromyMatrix monodromy(const mero::RationalMap& A, const PathPlan& loop, double tol) {
  if (!loop.closed(1e-9)) throw DomainError("monodromy requires a closed loop");
  const auto out = transport_pair(A, loop, {TransportState{1.0, 0.0}, TransportState{0.0, 1.0}}, tol);
  // Columns are the images of the unit initial vectors.
  MonodromyMatrix M;
  M.m = {out[0].w, out[1].w, out[0].w_prime, out[1].w_prime};
  M.log_scale = out[0].log_scale;
  M.accumulated_error = out[0].accumulated_error;
  return M;
}

double projective_defect(const std::array<cplx, 4>& m) {
  double norm2 = 0.0;
  for (cplx v : m) norm2 += std::norm(v);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw DomainError("projective_defect: zero or non-finite matrix");
  const cplx half_trace = 0.5 * (m[0] + m[3]);
  const double off = std::norm(m[0] - half_trace) + std::norm(m[1]) + std::norm(m[2]) + std::norm(m[3] - half_trace);
  return std::sqrt(off / norm2);
}

double projective_defect(const MonodromyMatrix& M) { return projective_defect(M.m); }

std::pair<double, double> elfving_coefficients(double a, double p) {
  if (p == 0.0) throw DomainError("elfving_coefficients: p must be nonzero");
  return {-27.0 * p / 2.0, (4.0 * a * a + 36.0 * a + 45.0) / (72.0 * p)};
}

mero::RationalMap elfving_r(double a, double b, double c, double p) {
  // (-c (w - p)^2 + a (w - p) + b) / (w - p)^2
  return mero::RationalMap({-c * p * p - a * p + b, 2.0 * c * p + a, -c}, {p * p, -2.0 * p, 1.0});
}

mero::RationalMap elfving_q(double a, double b, double c, double p) {
  if (c == 0.0) throw DomainError("elfving_q: c = 0 gives R(inf) = 0");
  if (-c > 0.0) return mero::build_q(mero::RaySpec(0.0), elfving_r(a, b, c, p));
  return mero::build_q(mero::RaySpec(pi / 3.0), elfving_r(-a, -b, -c, p));
}

nlohmann::json monodromy_report(const MonodromyMatrix& M, double tol, const PathPlan& loop) {
  nlohmann::json matrix = nlohmann::json::array();
  const double f = std::exp(M.log_scale);
  for (int r = 0; r < 2; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 2; ++c) {
      const cplx v = M.m[static_cast<std::size_t>(2 * r + c)] * f;
      row.push_back({v.real(), v.imag()});
    }
    matrix.push_back(row);
  }
  const cplx det = M.det();
  return {{"matrix", matrix},
          {"defect", projective_defect(M)},
          {"det", {det.real(), det.imag()}},
          {"accumulated_error", M.accumulated_error},
          {"tol", tol},
          {"loop", loop.closed() && !loop.segments().empty() && loop.segments().front().kind == Segment::Kind::arc
                       ? nlohmann::json{{"kind", "circle"},
                                        {"center", {loop.segments().front().center.real(),
                                                    loop.segments().front().center.imag()}},
                                        {"radius", loop.segments().front().radius},
                                        {"pieces", loop.segments().size()}}
                       : loop.to_json()}};
}

}  // namespace raydist::odesolve
