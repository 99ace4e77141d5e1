#include <doctest.h>

#include <Eigen/Sparse>

#include "raydist/harmonic/harmonic.hpp"
#include "raydist/rng.hpp"

using namespace raydist;
using namespace raydist::harmonic;

namespace {

// Poisson integral of the arc indicator by composite Simpson.
double poisson_oracle(cplx z, double theta0, double theta1) {
  const int n = 20000;
  const double h = (theta1 - theta0) / n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = theta0 + k * h;
    const double kernel = (1.0 - std::norm(z)) / std::norm(unit_phase(t) - z);
    sum += kernel * (k == 0 || k == n ? 1.0 : (k % 2 ? 4.0 : 2.0));
  }
  return sum * h / 3.0 / (2.0 * pi);
}

// Harmonic measure of gamma at 2i in H with eps = 1, from a 5-point
// finite-difference Dirichlet problem. The grid is aligned with the slot,
// the top edge and gamma; the arc is staircased.
double domain_h_fd(double h) {
  auto inside = [](double x, double y) {
    if (x * x + y * y >= 25.0) return false;
    if (y > 1.0 + 1e-12) return true;
    return x > 2.0 + 1e-12 && x < 3.0 - 1e-12 && y > -1.0 + 1e-12;
  };
  const int n = static_cast<int>(std::lround(5.0 / h));
  auto node = [&](int i, int j) { return std::pair{i * h, j * h}; };
  std::vector<int> id;
  const int width = 2 * n + 1, height = n + static_cast<int>(std::lround(1.0 / h)) + 1;
  const int j0 = -static_cast<int>(std::lround(1.0 / h));
  id.assign(static_cast<std::size_t>(width * height), -1);
  auto slot = [&](int i, int j) -> int& { return id[static_cast<std::size_t>((j - j0) * width + (i + n))]; };
  int count = 0;
  for (int j = j0; j < j0 + height; ++j)
    for (int i = -n; i <= n; ++i) {
      const auto [x, y] = node(i, j);
      if (inside(x, y)) slot(i, j) = count++;
    }
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count);
  for (int j = j0; j < j0 + height; ++j)
    for (int i = -n; i <= n; ++i) {
      const int k = slot(i, j);
      if (k < 0) continue;
      triplets.emplace_back(k, k, 4.0);
      for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const int ii = i + di, jj = j + dj;
        const bool in_grid = ii >= -n && ii <= n && jj >= j0 && jj < j0 + height;
        const int kk = in_grid ? slot(ii, jj) : -1;
        if (kk >= 0) {
          triplets.emplace_back(k, kk, -1.0);
        } else {
          const double x = node(ii, jj).first;
          if (jj == j0 && x > 2.0 && x < 3.0) rhs[k] += 1.0;
        }
      }
    }
  Eigen::SparseMatrix<double> A(count, count);
  A.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  const Eigen::VectorXd u = solver.solve(rhs);
  return u[slot(0, static_cast<int>(std::lround(2.0 / h)))];
}

}  // namespace

TEST_CASE("disk arc measure") {
  CHECK(disk_arc_measure(0.0, 0.0, 1.3) == doctest::Approx(1.3 / (2.0 * pi)));
  CHECK(disk_arc_measure(0.0, -2.0, -2.0 + 2.0 * pi) == doctest::Approx(1.0));
  const double right = disk_arc_measure(0.5, -pi / 2.0, pi / 2.0);
  CHECK(right > 0.5);
  CHECK(right < 1.0);
  CHECK(right == doctest::Approx(poisson_oracle(0.5, -pi / 2.0, pi / 2.0)).epsilon(1e-9));
  for (std::uint64_t i = 0; i < 50; ++i) {
    CounterRng rng(60, i);
    const cplx z = std::polar(0.95 * std::sqrt(rng.uniform()), 2.0 * pi * rng.uniform());
    const double t0 = 2.0 * pi * rng.uniform() - pi, t1 = t0 + 2.0 * pi * rng.uniform();
    CHECK(disk_arc_measure(z, t0, t1) == doctest::Approx(poisson_oracle(z, t0, t1)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(disk_arc_measure(1.5, 0.0, 1.0), DomainError);
}

TEST_CASE("walk on spheres in the unit disk") {
  const auto half = walk_on_spheres(unit_disk(0.0, pi), 0.0, {"target"}, 20000, 7);
  CHECK(std::abs(half.mean - 0.5) <= 3.0 * half.stderr_);
  const double alpha = 0.4;
  const auto arc = walk_on_spheres(unit_disk(-alpha, alpha), 0.0, {"target"}, 20000, 8);
  CHECK(std::abs(arc.mean - alpha / pi) <= std::max(3.0 * arc.stderr_, 0.01));
}

TEST_CASE("walk on spheres matches the disk oracle on 20 seeded configurations") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    CounterRng rng(61, i);
    const cplx z = std::polar(0.8 * std::sqrt(rng.uniform()), 2.0 * pi * rng.uniform());
    const double t0 = 2.0 * pi * rng.uniform() - pi, t1 = t0 + 0.2 + 5.0 * rng.uniform();
    const auto e = walk_on_spheres(unit_disk(t0, t1), z, {"target"}, 200000, 1000 + i, {}, Exec::parallel);
    CAPTURE(i);
    CHECK(std::abs(e.mean - disk_arc_measure(z, t0, t1)) <= std::max(3.0 * e.stderr_, 0.01));
    CHECK(e.censored == 0);
  }
}

TEST_CASE("estimates are additive and monotone in the target") {
  const auto domain = unit_disk(0.3, 2.5);
  const cplx z(0.2, -0.4);
  const auto t = walk_on_spheres(domain, z, {"target"}, 50000, 11);
  const auto r = walk_on_spheres(domain, z, {"rest"}, 50000, 12);
  const auto both = walk_on_spheres(domain, z, {"target", "rest"}, 50000, 13);
  CHECK(std::abs(t.mean + r.mean - 1.0) <= 3.0 * std::hypot(t.stderr_, r.stderr_));
  CHECK(both.mean >= t.mean - 3.0 * std::hypot(both.stderr_, t.stderr_));
  CHECK(both.mean == 1.0);
}

TEST_CASE("serial and parallel walks agree bit for bit") {
  const auto domain = build_domain_h(0.1);
  const auto s = walk_on_spheres(domain, {0.0, 0.2}, {"top_left", "top_right"}, 5000, 3, {}, Exec::serial);
  const auto p = walk_on_spheres(domain, {0.0, 0.2}, {"top_left", "top_right"}, 5000, 3, {}, Exec::parallel);
  CHECK(s.mean == p.mean);
  CHECK(s.stderr_ == p.stderr_);
  CHECK(s.seed == 3);
  CHECK(s.walks == 5000);
}

TEST_CASE("walk_on_spheres validates its inputs") {
  const auto disk = unit_disk(0.0, 1.0);
  CHECK_THROWS_AS(walk_on_spheres(disk, 2.0, {"target"}, 10, 1), DomainError);
  CHECK_THROWS_AS(walk_on_spheres(disk, 0.0, {"nope"}, 10, 1), DomainError);
  WalkOptions tight;
  tight.max_steps = 1;
  CHECK_THROWS_AS(walk_on_spheres(disk, 0.0, {"target"}, 1000, 1, tight), QualityError);
}

TEST_CASE("domain H geometry") {
  const double eps = 0.1;
  const auto h = build_domain_h(eps);
  REQUIRE(h.pieces().size() == 6);
  CHECK(h.labels() == std::set<std::string>{"top_left", "slot_left", "gamma", "slot_right", "top_right", "arc"});
  const auto& pieces = h.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const cplx end = pieces[i].segment.to, next = pieces[(i + 1) % pieces.size()].segment.from;
    CHECK(std::abs(end - next) <= 1e-12 * h.diameter());
  }
  for (const auto& p : pieces) {
    if (p.label != "arc") continue;
    CHECK(std::abs(std::abs(p.segment.from) - 5.0 * eps) <= 1e-14);
    CHECK(std::abs(std::abs(p.segment.to) - 5.0 * eps) <= 1e-14);
    CHECK(std::abs(p.segment.from.imag() - eps) <= 1e-14);
  }
  for (const auto& p : pieces) {
    if (p.label != "gamma") continue;
    CHECK(std::abs(p.segment.from.imag() + eps) <= 1e-15);
    CHECK(std::abs(std::abs(p.segment.to.real() - p.segment.from.real()) - eps) <= 1e-15);
  }
  CHECK(h.contains({0.0, 2.0 * eps}));
  CHECK(h.contains({2.5 * eps, 0.0}));
  CHECK_FALSE(h.contains({0.0, 0.0}));
  CHECK_FALSE(h.contains({0.0, 6.0 * eps}));
  CHECK(PlanarDomain::from_json(h.to_json()).to_json() == h.to_json());
  CHECK_THROWS_AS(build_domain_h(0.0), DomainError);
}

TEST_CASE("finite-difference oracle for omega(2i, gamma, H) converges") {
  const double coarse = domain_h_fd(0.1), fine = domain_h_fd(0.05);
  MESSAGE("finite-difference omega(2i, gamma, H): h=0.1 " << coarse << ", h=0.05 " << fine);
  CHECK(fine > 0.0);
  CHECK(std::abs(fine - coarse) <= 0.1 * fine);
}

TEST_CASE("domain H estimate is positive, scale invariant and matches the oracle") {
  const double oracle = domain_h_fd(0.05);
  std::vector<WalkEstimate> estimates;
  std::uint64_t seed = 500;
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto e = walk_on_spheres(build_domain_h(eps), {0.0, 2.0 * eps}, {"gamma"}, 200000, seed++, {}, Exec::parallel);
    CHECK(e.mean > 0.0);
    CHECK(std::abs(e.mean - oracle) <= 3.0 * e.stderr_ + 0.05 * oracle);
    estimates.push_back(e);
  }
  for (std::size_t i = 0; i < estimates.size(); ++i)
    for (std::size_t j = i + 1; j < estimates.size(); ++j)
      CHECK(std::abs(estimates[i].mean - estimates[j].mean) <= 3.0 * std::hypot(estimates[i].stderr_, estimates[j].stderr_));
}

TEST_CASE("Lemma 12 fits") {
  std::vector<std::pair<cplx, double>> exact, mixed, power;
  for (std::uint64_t i = 0; i < 20; ++i) {
    CounterRng rng(62, i);
    const cplx z(0.1 + 2.0 * rng.uniform(), 4.0 * rng.uniform() - 2.0);
    exact.emplace_back(z, z.real());
    mixed.emplace_back(z, (2.0 * z + 3.0 / z).real());
    power.emplace_back(z, std::pow(z, 1.5).real());
  }
  const auto a = lemma12_fit(exact);
  CHECK(a.a == doctest::Approx(1.0));
  CHECK(std::abs(a.b) <= 1e-12);
  CHECK(a.residual <= 1e-12);
  CHECK(a.in_family);
  const auto b = lemma12_fit(mixed);
  CHECK(b.a == doctest::Approx(2.0));
  CHECK(b.b == doctest::Approx(3.0));
  CHECK(b.residual <= 1e-10);
  const auto c = lemma12_fit(power);
  CHECK(c.residual > 1e-3);
  CHECK_FALSE(c.in_family);
  CHECK(c.a >= 0.0);
  CHECK(c.b >= 0.0);
  CHECK_THROWS_AS(lemma12_fit(std::vector<std::pair<cplx, double>>(exact.begin(), exact.begin() + 5)), DomainError);
}

TEST_CASE("estimate CSV rows") {
  WalkEstimate e;
  e.seed = 9;
  e.walks = 100;
  e.mean = 0.25;
  e.stderr_ = 0.5;
  CHECK(estimate_csv_row(e) == "9,100,0.25,0.5,0");
  CHECK(std::string(kEstimateCsvHeader) == "seed,walks,mean,stderr,censored");
}
