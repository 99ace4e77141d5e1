#include <doctest.h>

#include <algorithm>
#include <set>

#include "raydist/mero/rational.hpp"
#include "raydist/rng.hpp"
#include "raydist/rootscan/counting.hpp"
#include "raydist/rootscan/region.hpp"
#include "raydist/rootscan/scan.hpp"
#include "raydist/specfun/airy.hpp"

using namespace raydist;
using namespace raydist::rootscan;
using mero::RationalMap;
using mero::Target;

namespace {

int airy_zeros_within(double r) {
  int k = 0;
  while (std::abs(specfun::airy_zero(k + 1)) <= r) ++k;
  return k;
}

int total_multiplicity(const std::vector<RootRecord>& roots) {
  int m = 0;
  for (const auto& r : roots) m += r.multiplicity;
  return m;
}

RationalMap random_rational(std::uint64_t seed) {
  CounterRng rng(seed, 0);
  auto c = [&] { return cplx(4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0); };
  return RationalMap({c(), c(), c(), 1.0}, {c(), c(), 1.0});
}

const mero::MeroMap& f1() {
  static const mero::MeroMap f = mero::example1();
  return f;
}

}  // namespace

TEST_CASE("winding counts") {
  const auto sq = RationalMap::polynomial({-1.0, 0.0, 1.0}).as_mero("z^2-1");
  CHECK(winding_count(sq, Region::rectangle({-2.0, -2.0}, {2.0, 2.0}), Target::zero()).count == 2);
  CHECK(winding_count(sq, Region::rectangle({0.5, -2.0}, {2.0, 2.0}), Target::zero()).count == 1);

  // a = inf counts poles through the reciprocal chart.
  const auto r = RationalMap({1.0}, {-1.0, 0.0, 0.0, 1.0}).as_mero("1/(z^3-1)");
  CHECK(winding_count(r, Region::rectangle({-2.0, -2.0}, {2.0, 2.0}), Target::infinity()).count == 3);
  CHECK(winding_count(r, Region::rectangle({-2.0, -2.0}, {2.0, 2.0}), Target::zero()).count == 0);
}

TEST_CASE("winding counts for example1 match the Airy zero oracle") {
  const int expected = airy_zeros_within(10.0);
  CHECK(expected == 6);
  const auto sector = Region::annulus_sector(0.5, 10.0, pi / 3.0 - pi / 12.0, pi / 3.0 + pi / 12.0);
  CHECK(winding_count(f1(), sector, Target::zero()).count == expected);
  CHECK(winding_count(f1(), Region::annulus(0.5, 10.0), Target::one()).count == expected);
  CHECK(winding_count(f1(), Region::annulus(0.5, 10.0), Target::infinity()).count == expected);
}

TEST_CASE("a root on the contour is handled by nudging") {
  const auto f = RationalMap::polynomial({-1.0, 1.0}).as_mero("z-1");
  const auto res = winding_count(f, Region::rectangle({-1.0, -1.0}, {1.0, 1.0}), Target::zero());
  CHECK(res.nudges >= 1);
  CHECK(res.count == 1);
}

TEST_CASE("winding counts are additive over partitions") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto f = random_rational(100 + s).as_mero("random");
    const auto whole = Region::rectangle({-2.9, -3.1}, {3.3, 2.7});
    for (const auto& a : {Target::zero(), Target::infinity(), Target::at({0.5, -0.5})}) {
      try {
        const int total = winding_count(f, whole, a).count;
        int sum = 0;
        for (const auto& part : whole.split(0.43)) sum += winding_count(f, part, a).count;
        CHECK(sum == total);
      } catch (const GeometryError&) {
        // An a-point on an internal cut; measure zero, skip.
      }
    }
  }
}

TEST_CASE("locate_roots examples") {
  const auto cube = RationalMap::polynomial({0.0, 0.0, 0.0, 1.0}).as_mero("z^3");
  const auto roots = locate_roots(cube, Region::rectangle({-1.0, -1.0}, {1.0, 1.0}), Target::zero());
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].multiplicity == 3);
  CHECK(std::abs(roots[0].location) <= 1e-6);

  const auto ones = locate_roots(f1(), Region::rectangle({-11.0, -1.0}, {-1.0, 1.0}), Target::one());
  // a_7 = -10.04 also lies in [-11, -1].
  const int expected = airy_zeros_within(11.0);
  CHECK(expected == 7);
  REQUIRE(static_cast<int>(ones.size()) == expected);
  for (int k = 0; k < expected; ++k) {
    CHECK(std::abs(ones[static_cast<std::size_t>(k)].location - specfun::airy_zero(k + 1)) <= 1e-8);
    CHECK(ones[static_cast<std::size_t>(k)].refined);
  }

  const auto none = locate_roots(f1(), Region::rectangle({1.0, -3.0}, {2.0, -2.0}), Target::zero());
  CHECK(none.empty());
}

TEST_CASE("located multiplicities sum to the winding count") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto f = random_rational(200 + s).as_mero("random");
    const auto region = Region::rectangle({-3.0, -3.0}, {3.0, 3.0});
    for (const auto& a : {Target::zero(), Target::one(), Target::infinity()}) {
      const auto roots = locate_roots(f, region, a);
      CHECK(total_multiplicity(roots) == winding_count(f, region, a).count);
      for (const auto& r : roots) CHECK(r.refined_residual <= 1e-8 * std::max(1.0, std::abs(r.location)));
    }
  }
}

TEST_CASE("parallel and serial scans agree exactly") {
  const auto region = Region::annulus(0.5, 12.0);
  const auto serial = locate_roots(f1(), region, Target::zero(), {}, Exec::serial);
  const auto parallel = locate_roots(f1(), region, Target::zero(), {}, Exec::parallel);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].location == parallel[i].location);
}

TEST_CASE("example1 a-points lie on their rays and are permuted by rotation") {
  const auto region = Region::annulus(0.5, 12.0);
  const auto zeros = locate_roots(f1(), region, Target::zero());
  const auto ones = locate_roots(f1(), region, Target::one());
  const auto poles = locate_roots(f1(), region, Target::infinity());
  CHECK(ray_deviation(zeros, mero::RaySpec(pi / 3.0)).max_dev < 1e-6);
  CHECK(ray_deviation(ones, mero::RaySpec(pi)).max_dev < 1e-6);
  CHECK(ray_deviation(poles, mero::RaySpec(-pi / 3.0)).max_dev < 1e-6);
  REQUIRE(zeros.size() == ones.size());
  REQUIRE(ones.size() == poles.size());

  const cplx w = unit_phase(2.0 * pi / 3.0);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    CHECK(std::abs(w * zeros[i].location - ones[i].location) <= 1e-6);
    CHECK(std::abs(w * ones[i].location - poles[i].location) <= 1e-6);
  }

  const auto n = combined({counting(zeros), counting(ones), counting(poles)});
  CHECK(n(10.0) == 18);
  CHECK(n(0.5) == 0);
}

TEST_CASE("ray deviation") {
  std::vector<RootRecord> catalog(2);
  catalog[0].location = unit_phase(pi / 3.0);
  catalog[1].location = 2.0 * unit_phase(pi / 3.0);
  const auto d = ray_deviation(catalog, mero::RaySpec(pi / 3.0));
  CHECK(d.max_dev <= 1e-15);
  CHECK(d.mean_dev <= 1e-15);
  catalog[1].location = -2.0;
  CHECK(ray_deviation(catalog, mero::RaySpec(pi - 0.1)).max_dev == doctest::Approx(2.0 * pi / 3.0 - 0.1 + 0.0).epsilon(1e-12));
  catalog[0].location = 0.0;
  CHECK_THROWS_AS(ray_deviation(catalog, mero::RaySpec(0.0)), DomainError);
}

TEST_CASE("counting functions") {
  const CountingFunction c("0", {1.0, 2.0, 2.0, 5.0});
  CHECK(c(0.5) == 0);
  CHECK(c(2.0) == 3);
  CHECK(c(10.0) == 4);
  std::size_t prev = 0;
  for (double r = 0.0; r < 6.0; r += 0.01) {
    CHECK(c(r) >= prev);
    prev = c(r);
  }
  const auto both = combined({c, CountingFunction("1", {1.5})});
  CHECK(both.target() == "combined");
  CHECK(both.size() == 5);
  CHECK(std::is_sorted(both.moduli().begin(), both.moduli().end()));
}

TEST_CASE("growth exponent of an exact power law") {
  std::vector<double> moduli;
  for (int k = 1; k <= 2000; ++k) moduli.push_back(std::pow(k, 2.0 / 3.0));
  const auto fit = growth_exponent(CountingFunction("synthetic", moduli), 5.0, 150.0);
  CHECK(std::abs(fit.slope - 1.5) <= 0.01);
  CHECK_THROWS_AS(growth_exponent(CountingFunction("few", {1.0, 2.0, 3.0}), 0.5, 4.0), DomainError);
}

TEST_CASE("sector limit probes") {
  const auto one = RationalMap::constant(1.0).as_mero("one");
  const auto sector = Region::annulus_sector(1.0, 40.0, -0.3, 0.3);
  CHECK(sector_limit_probe(one, sector, geometric_radii(2.0, 40.0)).limit == SectorLimit::to_one);

  std::set<SectorLimit> seen;
  for (double theta : {0.0, 2.0 * pi / 3.0, -2.0 * pi / 3.0}) {
    const auto s = Region::annulus_sector(1.0, 40.0, theta - 0.3, theta + 0.3);
    const auto pr = sector_limit_probe(f1(), s, geometric_radii(2.0, 40.0));
    CHECK(pr.limit != SectorLimit::inconclusive);
    seen.insert(pr.limit);
  }
  CHECK(seen.size() == 3);
  // The sector opposite the zero ray tends to 0.
  const auto opposite = Region::annulus_sector(1.0, 40.0, pi / 3.0 + pi - 0.3, pi / 3.0 + pi + 0.3);
  CHECK(sector_limit_probe(f1(), opposite, geometric_radii(2.0, 30.0)).limit == SectorLimit::to_zero);
}

TEST_CASE("regions") {
  const auto rect = Region::rectangle({-1.0, 0.0}, {2.0, 1.0});
  CHECK(rect.contains({0.0, 0.5}));
  CHECK_FALSE(rect.contains({3.0, 0.5}));
  const auto parts = rect.split(0.5);
  CHECK(parts.size() == 2);  // width 3 exceeds twice the height
  const auto sector = Region::annulus_sector(1.0, 3.0, 0.2, 1.2);
  CHECK(sector.contains(std::polar(2.0, 0.7)));
  CHECK_FALSE(sector.contains(std::polar(2.0, 1.5)));
  CHECK(Region::from_json(sector.to_json()).to_json() == sector.to_json());
  CHECK(Region::annulus(1.0, 2.0).full_annulus());
  CHECK(Region::annulus(1.0, 2.0).contours().size() == 2);
  CHECK_THROWS_AS(Region::annulus_sector(2.0, 1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Region::rectangle({1.0, 0.0}, {0.0, 1.0}), DomainError);
}

TEST_CASE("catalog serialization") {
  const auto region = Region::rectangle({-11.0, -1.0}, {-1.0, 1.0});
  const auto ones = locate_roots(f1(), region, Target::one());
  const auto j = catalog_to_json("example1", Target::one(), region, ones);
  CHECK(j["function"] == "example1");
  CHECK(j["target"] == "1");
  const auto back = catalog_from_json(j);
  REQUIRE(back.size() == 7);
  for (std::size_t i = 0; i < ones.size(); ++i) {
    CHECK(back[i].location == ones[i].location);
    CHECK(back[i].multiplicity == ones[i].multiplicity);
  }
  const std::string csv = catalog_to_csv(ones);
  CHECK(csv.rfind("z_re,z_im,modulus,arg,mult,target,resid\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(ones.size()) + 1);
}

TEST_CASE("targets") {
  CHECK(Target::parse("inf") == Target::infinity());
  CHECK(Target::parse("1") == Target::one());
  CHECK(Target::parse("0.5,-2") == Target::at({0.5, -2.0}));
  CHECK(Target::at({0.5, -2.0}).label() == "0.5,-2");
  CHECK_THROWS_AS(Target::parse("x"), DomainError);
}
