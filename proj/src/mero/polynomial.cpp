#include "raydist/mero/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>

namespace raydist::mero {

cplx poly_eval(std::span<const cplx> coeffs, cplx z) {
  cplx acc(0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Jet3 poly_jet(std::span<const cplx> coeffs, cplx z) {
  const Jet3 x = Jet3::variable(z);
  Jet3 acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x;
    acc.c[0] += *it;
  }
  return acc;
}

std::vector<cplx> trim(std::vector<cplx> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == cplx(0.0)) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0.0);
  return coeffs;
}

std::vector<cplx> poly_roots(std::span<const cplx> coeffs) {
  const std::vector<cplx> p = trim({coeffs.begin(), coeffs.end()});
  const auto n = static_cast<Eigen::Index>(p.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -p[static_cast<std::size_t>(i)] / p.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const auto& ev = solver.eigenvalues();
  std::vector<cplx> roots(ev.data(), ev.data() + ev.size());
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

double normalized_resultant(std::span<const cplx> p_in, std::span<const cplx> q_in) {
  auto normalize = [](std::span<const cplx> v) {
    std::vector<cplx> out = trim({v.begin(), v.end()});
    double scale = 0.0;
    for (cplx c : out) scale = std::max(scale, std::abs(c));
    if (scale > 0.0)
      for (cplx& c : out) c /= scale;
    return out;
  };
  const std::vector<cplx> p = normalize(p_in), q = normalize(q_in);
  const auto m = static_cast<Eigen::Index>(p.size()) - 1;
  const auto n = static_cast<Eigen::Index>(q.size()) - 1;
  if (m == 0) return n == 0 ? 1.0 : std::pow(std::abs(p[0]), static_cast<double>(n));
  if (n == 0) return std::pow(std::abs(q[0]), static_cast<double>(m));

  // Sylvester matrix with rows of shifted coefficient vectors, highest degree first.
  const Eigen::Index size = m + n;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (Eigen::Index row = 0; row < n; ++row)
    for (Eigen::Index j = 0; j <= m; ++j) s(row, row + j) = p[static_cast<std::size_t>(m - j)];
  for (Eigen::Index row = 0; row < m; ++row)
    for (Eigen::Index j = 0; j <= n; ++j) s(n + row, row + j) = q[static_cast<std::size_t>(n - j)];
  return std::abs(s.partialPivLu().determinant());
}

}  // namespace raydist::mero
