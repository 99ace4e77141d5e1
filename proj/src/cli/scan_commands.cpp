// verify-example1, roots and schwarzian-check.
#include <algorithm>
#include <set>

#include "command_support.hpp"
#include "raydist/mero/mobius.hpp"
#include "raydist/mero/ray.hpp"
#include "raydist/mero/schwarzian.hpp"
#include "raydist/rng.hpp"
#include "raydist/rootscan/counting.hpp"

namespace raydist::cli {

namespace {

using rootscan::Region;
using rootscan::RootRecord;

struct SampleGrid {
  long long points = 100;
  double radius = 10.0;
  double clearance = 0.2;
};

SampleGrid read_grid(Section& p) {
  Section s = p.child("grid");
  SampleGrid g;
  g.points = s.integer("points", 100, 1, 1000000);
  g.radius = s.positive("radius", 10.0);
  g.clearance = s.number("clearance", 0.2, 0.0, 1e6);
  s.finish();
  p.adopt("grid", s);
  return g;
}

// Seeded points in the disk |z| <= radius, at least `clearance` from every
// listed location. Point i uses CounterRng(seed, i).
std::vector<cplx> sample_points(std::uint64_t seed, const SampleGrid& g, const std::vector<cplx>& avoid) {
  std::vector<cplx> out;
  const std::uint64_t max_tries = 1000 * static_cast<std::uint64_t>(g.points);
  for (std::uint64_t i = 0; i < max_tries && out.size() < static_cast<std::size_t>(g.points); ++i) {
    CounterRng rng(seed, i);
    const double r = g.radius * std::sqrt(rng.uniform());
    const cplx z = std::polar(r, 2.0 * pi * rng.uniform());
    bool ok = true;
    for (cplx a : avoid) ok = ok && std::abs(z - a) >= g.clearance;
    if (ok) out.push_back(z);
  }
  if (out.size() < static_cast<std::size_t>(g.points)) {
    throw DomainError("grid: cannot place " + std::to_string(g.points) + " points with the requested clearance");
  }
  return out;
}

std::vector<cplx> locations(const std::vector<RootRecord>& roots) {
  std::vector<cplx> z;
  for (const auto& r : roots) z.push_back(r.location);
  return z;
}

std::size_t count_within(const std::vector<RootRecord>& roots, double radius) {
  std::size_t n = 0;
  for (const auto& r : roots)
    if (std::abs(r.location) <= radius) n += static_cast<std::size_t>(r.multiplicity);
  return n;
}

std::vector<RootRecord> within(const std::vector<RootRecord>& roots, double radius) {
  std::vector<RootRecord> out;
  for (const auto& r : roots)
    if (std::abs(r.location) <= radius) out.push_back(r);
  return out;
}

const char* color_for(const mero::Target& t) {
  if (t.infinite) return "#d62728";
  if (t.value == cplx(0.0)) return "#1f77b4";
  return "#2ca02c";
}

}  // namespace

Command parse_verify_example1(Section& p, Section& tol) {
  struct Params {
    double r_in, r_out, count_radius, locate_tol;
    long long expected;
    double growth_lo, growth_hi;
    SampleGrid grid;
    double probe_r0, probe_r_max, probe_half_width;
    double ray_tol, schwarzian_tol, band_lo, band_hi, density_lo, density_hi;
  } c{};
  c.r_in = p.positive("r_in", 0.5);
  c.r_out = p.positive("r_out", 12.0);
  c.count_radius = p.positive("count_radius", 10.0);
  c.expected = p.integer("expected_count", 6, 0, 1000000);
  c.locate_tol = p.positive("locate_tol", 1e-10, 0.0, 1e-3);
  {
    Section g = p.child("growth");
    c.growth_lo = g.positive("r_lo", 10.0);
    c.growth_hi = g.positive("r_hi", 60.0);
    g.finish();
    p.adopt("growth", g);
  }
  c.grid = read_grid(p);
  {
    Section s = p.child("probes");
    c.probe_r0 = s.positive("r0", 2.0);
    c.probe_r_max = s.positive("r_max", 40.0);
    c.probe_half_width = s.positive("half_width", 0.3, 0.0, pi / 3.0);
    s.finish();
    p.adopt("probes", s);
  }
  c.ray_tol = tol.positive("ray_deviation", 1e-6);
  c.schwarzian_tol = tol.positive("schwarzian_residual", 1e-6);
  c.band_lo = tol.number("growth_lo", 1.45);
  c.band_hi = tol.number("growth_hi", 1.55);
  c.density_lo = tol.number("density_lo", 0.95);
  c.density_hi = tol.number("density_hi", 1.05);

  if (!(c.r_out > c.r_in)) p.fail("r_out", "must exceed r_in");
  if (c.count_radius < c.r_in || c.count_radius > std::max(c.r_out, c.growth_hi)) {
    p.fail("count_radius", "must lie in [r_in, max(r_out, growth.r_hi)]");
  }
  if (!(c.growth_hi > c.growth_lo) || c.growth_lo < c.r_in) p.fail("growth", "need r_in <= r_lo < r_hi");
  if (c.grid.radius > std::max(c.r_out, c.growth_hi)) p.fail("grid.radius", "must not exceed the scanned radius");
  if (!(c.probe_r_max > c.probe_r0)) p.fail("probes.r_max", "must exceed probes.r0");
  if (c.band_lo > c.band_hi) tol.fail("growth_lo", "must not exceed growth_hi");
  if (c.density_lo > c.density_hi) tol.fail("density_lo", "must not exceed density_hi");

  return [c](Run& run, nlohmann::json& report) {
    const mero::MeroMap f = mero::example1();
    const double R = std::max(c.r_out, c.growth_hi);
    const Region region = Region::annulus(c.r_in, R);
    rootscan::LocateOptions opts;
    opts.tol = c.locate_tol;
    const std::vector<std::pair<mero::Target, double>> targets = {
        {mero::Target::zero(), pi / 3.0}, {mero::Target::one(), pi}, {mero::Target::infinity(), -pi / 3.0}};
    Checks checks;
    std::vector<RootRecord> all;
    std::vector<rootscan::CountingFunction> counts;
    nlohmann::json per_target = nlohmann::json::object();
    std::vector<SvgSeries> series;
    double worst_dev = 0.0;
    std::vector<RootRecord> one_points;
    for (const auto& [t, theta] : targets) {
      run.log << "scanning " << t.label() << "-points in " << region.to_json().dump() << "\n";
      auto roots = run.cache.roots(f, region, t, opts, run.exec);
      const auto inner = within(roots, c.r_out);
      const auto dev = rootscan::ray_deviation(inner, mero::RaySpec(theta));
      worst_dev = std::max(worst_dev, dev.max_dev);
      const auto n = count_within(roots, c.count_radius);
      per_target[t.label()] = {{"ray", theta},
                               {"count_within_count_radius", n},
                               {"records", roots.size()},
                               {"max_ray_deviation", dev.max_dev},
                               {"mean_ray_deviation", dev.mean_dev}};
      checks.add("count_" + t.label(), static_cast<double>(n), c.expected, "==",
                 n == static_cast<std::size_t>(c.expected));
      counts.push_back(rootscan::counting(roots));
      series.push_back({t.label() + "-points", color_for(t), locations(inner)});
      if (t == mero::Target::one()) one_points = roots;
      all.insert(all.end(), roots.begin(), roots.end());
    }
    checks.add("ray_deviation", worst_dev, c.ray_tol, "<", worst_dev < c.ray_tol);

    const auto pts = sample_points(run.seed, c.grid, locations(all));
    double worst_s = 0.0;
    cplx worst_at{};
    for (cplx z : pts) {
      const double r = std::abs(mero::schwarzian(f, z) + 2.0 * z) / (1.0 + std::abs(2.0 * z));
      if (r > worst_s) {
        worst_s = r;
        worst_at = z;
      }
    }
    checks.add("schwarzian_residual", worst_s, c.schwarzian_tol, "<=", worst_s <= c.schwarzian_tol);

    nlohmann::json probes = nlohmann::json::array();
    std::set<std::string> limits;
    for (double theta : {0.0, 2.0 * pi / 3.0, -2.0 * pi / 3.0}) {
      const auto sector = Region::annulus_sector(c.probe_r0 / 2.0, c.probe_r_max, theta - c.probe_half_width,
                                                 theta + c.probe_half_width);
      const auto pr = rootscan::sector_limit_probe(f, sector, rootscan::geometric_radii(c.probe_r0, c.probe_r_max));
      probes.push_back({{"theta", theta},
                        {"limit", rootscan::to_string(pr.limit)},
                        {"abs_f", pr.abs_f.back()},
                        {"abs_f_minus_1", pr.abs_f_minus_1.back()}});
      if (pr.limit != rootscan::SectorLimit::inconclusive) limits.insert(rootscan::to_string(pr.limit));
    }
    checks.add("sector_limits", static_cast<double>(limits.size()), 3, "== distinct", limits.size() == 3);

    const auto fit = rootscan::growth_exponent(rootscan::combined(counts), c.growth_lo, c.growth_hi);
    checks.add("growth_exponent", fit.slope, nlohmann::json::array({c.band_lo, c.band_hi}), "in",
               fit.slope >= c.band_lo && fit.slope <= c.band_hi);
    const double n1 = static_cast<double>(count_within(one_points, c.growth_hi));
    const double density = n1 * 3.0 * pi / (2.0 * std::pow(c.growth_hi, 1.5));
    checks.add("density_ratio", density, nlohmann::json::array({c.density_lo, c.density_hi}), "in",
               density >= c.density_lo && density <= c.density_hi);

    report["region"] = region.to_json();
    report["targets"] = per_target;
    report["schwarzian"] = {{"points", pts.size()}, {"max_residual", worst_s}, {"at", {worst_at.real(), worst_at.imag()}}};
    report["probes"] = probes;
    report["growth"] = {{"slope", fit.slope}, {"stderr", fit.stderr_}, {"points", fit.points},
                        {"r_lo", c.growth_lo}, {"r_hi", c.growth_hi}, {"density_ratio", density}};
    run.out.write("roots.csv", rootscan::catalog_to_csv(all));
    if (run.svg) {
      run.out.write("roots.svg", svg_scatter(series, {pi / 3.0, pi, -pi / 3.0}, c.r_out, "Example 1 a-points"));
    }
    return checks.finish(report);
  };
}

Command parse_roots(Section& p, Section& tol) {
  struct Params {
    FunctionSpec fn;
    Region region = Region::annulus(0.5, 12.0);
    mero::Target target = mero::Target::zero();
    double tol = 1e-10;
    std::optional<double> ray;
    double ray_tol = 1e-6;
  } c;
  c.fn = read_function(p, "function", "example1");
  const auto region_json = p.raw("region", {{"kind", "annulus"}, {"r_in", 0.5}, {"r_out", 12.0}});
  try {
    c.region = Region::from_json(region_json);
  } catch (const std::exception& e) {
    p.fail("region", e.what());
  }
  const auto label = p.text("target", "0");
  try {
    c.target = mero::Target::parse(label);
  } catch (const std::exception& e) {
    p.fail("target", e.what());
  }
  c.tol = p.positive("tol", 1e-10, 0.0, 1e-3);
  if (p.has("ray")) c.ray = p.number("ray", 0.0, -pi, pi);
  if (c.ray) c.ray_tol = tol.positive("ray_deviation", 1e-6);

  return [c](Run& run, nlohmann::json& report) {
    const auto f = c.fn.make();
    rootscan::LocateOptions opts;
    opts.tol = c.tol;
    const auto roots = run.cache.roots(f, c.region, c.target, opts, run.exec);
    auto catalog = rootscan::catalog_to_json(f.id(), c.target, c.region, roots);
    catalog["tol"] = c.tol;
    run.out.write_json("catalog.json", catalog);
    run.out.write("roots.csv", rootscan::catalog_to_csv(roots));
    std::size_t total = 0;
    for (const auto& r : roots) total += static_cast<std::size_t>(r.multiplicity);
    report["function"] = f.id();
    report["target"] = c.target.label();
    report["region"] = c.region.to_json();
    report["records"] = roots.size();
    report["count"] = total;
    Checks checks;
    if (c.ray && !roots.empty()) {
      const auto dev = rootscan::ray_deviation(roots, mero::RaySpec(*c.ray));
      report["ray_deviation"] = {{"max", dev.max_dev}, {"mean", dev.mean_dev}};
      checks.add("ray_deviation", dev.max_dev, c.ray_tol, "<", dev.max_dev < c.ray_tol);
    }
    if (run.svg) {
      double extent = 1.0;
      for (const auto& r : roots) extent = std::max({extent, std::abs(r.location.real()), std::abs(r.location.imag())});
      std::vector<double> rays = c.ray ? std::vector<double>{*c.ray} : c.fn.reference_rays();
      run.out.write("roots.svg", svg_scatter({{c.target.label() + "-points", color_for(c.target), locations(roots)}},
                                             rays, 1.05 * extent, f.id() + " " + c.target.label() + "-points"));
    }
    return checks.finish(report);
  };
}

Command parse_schwarzian_check(Section& p, Section& tol) {
  struct Params {
    FunctionSpec fn;
    std::optional<mero::RationalMap> expected;
    SampleGrid grid;
    std::vector<cplx> mobius;
    double residual_tol = 1e-6;
    std::optional<double> mobius_tol;
  } c;
  c.fn = read_function(p, "function", "example1");
  const nlohmann::json minus_two_z = {{"num", {{0.0, 0.0}, {-2.0, 0.0}}}, {"den", {{1.0, 0.0}}}};
  const auto expected = p.raw("expected", c.fn.name == "example1" ? minus_two_z : nlohmann::json());
  if (!expected.is_null()) {
    try {
      c.expected = mero::RationalMap::from_json(expected);
    } catch (const std::exception& e) {
      p.fail("expected", std::string("bad rational map: ") + e.what());
    }
  }
  c.grid = read_grid(p);
  const auto mob = p.raw("mobius", {{2.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {3.0, 0.0}});
  try {
    c.mobius = mero::complex_list_from_json(mob);
    if (c.mobius.size() != 4) throw DomainError("expected four coefficients [a, b, c, d]");
    (void)mero::Mobius(c.mobius[0], c.mobius[1], c.mobius[2], c.mobius[3]);
  } catch (const std::exception& e) {
    p.fail("mobius", e.what());
  }
  c.residual_tol = tol.positive("schwarzian_residual", 1e-6);
  // Value-based differentiation loses digits where f is nearly flat, so the
  // invariance residual is only checked when a tolerance is requested.
  if (tol.has("mobius_invariance")) c.mobius_tol = tol.positive("mobius_invariance", 1e-6);

  return [c](Run& run, nlohmann::json& report) {
    const auto f = c.fn.make();
    const mero::Mobius L(c.mobius[0], c.mobius[1], c.mobius[2], c.mobius[3]);
    // Stay clear of the zeros and poles of f inside the sampled disk.
    const double box = c.grid.radius + c.grid.clearance + 1.0;
    const Region region = Region::rectangle({-box, -box}, {box, box});
    std::vector<cplx> avoid;
    for (const auto& t : {mero::Target::zero(), mero::Target::infinity()}) {
      const auto z = locations(run.cache.roots(f, region, t, {}, run.exec));
      avoid.insert(avoid.end(), z.begin(), z.end());
    }
    const auto pts = sample_points(run.seed, c.grid, avoid);
    std::vector<cplx> S(pts.size());
    std::vector<double> inv(pts.size());
    // The invariance residual differentiates the values of f and L o f
    // directly; where f is flat to working precision (f' underflows next to
    // an asymptotic value) it is undefined and the point is skipped.
    for_each_index(run.exec, pts.size(), [&](std::size_t i) {
      S[i] = mero::schwarzian(f, pts[i]);
      try {
        inv[i] = mero::mobius_invariance_residual(L, f, pts[i]) / (1.0 + std::abs(S[i]));
      } catch (const CriticalPointError&) {
        inv[i] = std::numeric_limits<double>::quiet_NaN();
      }
    });
    std::string csv = c.expected ? "z_re,z_im,s_re,s_im,residual,mobius\n" : "z_re,z_im,s_re,s_im,mobius\n";
    double worst = 0.0, worst_inv = 0.0;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      csv += num(pts[i].real()) + "," + num(pts[i].imag()) + "," + num(S[i].real()) + "," + num(S[i].imag()) + ",";
      if (c.expected) {
        const cplx q = (*c.expected)(pts[i]);
        const double r = std::abs(S[i] - q) / (1.0 + std::abs(q));
        worst = std::max(worst, r);
        csv += num(r) + ",";
      }
      if (std::isnan(inv[i])) {
        ++skipped;
        csv += "skipped\n";
      } else {
        worst_inv = std::max(worst_inv, inv[i]);
        csv += num(inv[i]) + "\n";
      }
    }
    run.out.write("schwarzian.csv", csv);
    report["function"] = f.id();
    report["points"] = pts.size();
    report["avoided"] = avoid.size();
    report["mobius_skipped"] = skipped;
    Checks checks;
    if (c.expected) {
      report["expected"] = c.expected->to_json();
      checks.add("schwarzian_residual", worst, c.residual_tol, "<=", worst <= c.residual_tol);
    }
    report["mobius_invariance_max"] = worst_inv;
    if (c.mobius_tol) checks.add("mobius_invariance", worst_inv, *c.mobius_tol, "<=", worst_inv <= *c.mobius_tol);
    return checks.finish(report);
  };
}

}  // namespace raydist::cli
