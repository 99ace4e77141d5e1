// monodromy, peaks, sector-search and harmonic.
#include <algorithm>
#include <filesystem>
#include <set>

#include "command_support.hpp"
#include "raydist/asymptotics/peaks.hpp"
#include "raydist/asymptotics/sequences.hpp"
#include "raydist/harmonic/harmonic.hpp"
#include "raydist/odesolve/monodromy.hpp"
#include "raydist/odesolve/transport.hpp"
#include "raydist/rootscan/counting.hpp"

namespace raydist::cli {

Command parse_monodromy(Section& p, Section& tol) {
  struct Params {
    double a, p, b, c, tol;
    long long pieces;
    std::string expect;
    double max_defect, min_defect;
  } c{};
  c.a = p.number("a", 1.0);
  c.p = p.number("p", 1.0);
  if (c.p == 0.0) p.fail("p", "must be nonzero");
  const auto [b0, c0] = c.p != 0.0 ? odesolve::elfving_coefficients(c.a, c.p) : std::pair{0.0, 0.0};
  c.b = p.number("b", b0);
  const double c_base = p.number("c", c0);
  const double c_scale = p.number("c_scale", 1.0);
  c.c = c_base * c_scale;
  c.tol = p.number("tol", 1e-11, odesolve::kMinTol, odesolve::kMaxTol);
  c.pieces = p.integer("pieces", odesolve::kLoopPieces, 16, 1000000);
  c.expect = p.text("expect", "scalar", {"scalar", "nonscalar"});
  if (c.expect == "scalar") c.max_defect = tol.positive("max_defect", 1e-6);
  else c.min_defect = tol.positive("min_defect", 1e-3);

  return [c](Run& run, nlohmann::json& report) {
    const auto Q = odesolve::elfving_q(c.a, c.b, c.c, c.p);
    std::vector<cplx> half = Q.num();
    for (auto& v : half) v *= 0.5;
    const mero::RationalMap A(half, Q.den());
    const auto loop = odesolve::monodromy_loop(A, static_cast<int>(c.pieces));
    run.log << "transporting around " << loop.segments().size() << " arcs\n";
    const auto M = odesolve::monodromy(A, loop, c.tol);
    auto mono = odesolve::monodromy_report(M, c.tol, loop);
    mono["coefficients"] = {{"a", c.a}, {"b", c.b}, {"c", c.c}, {"p", c.p}};
    mono["Q"] = Q.to_json();
    run.out.write_json("monodromy.json", mono);
    const double defect = odesolve::projective_defect(M);
    report["defect"] = defect;
    report["coefficients"] = mono["coefficients"];
    Checks checks;
    if (c.expect == "scalar") checks.add("projective_defect", defect, c.max_defect, "<=", defect <= c.max_defect);
    else checks.add("projective_defect", defect, c.min_defect, ">=", defect >= c.min_defect);
    return checks.finish(report);
  };
}

Command parse_peaks(Section& p, Section& tol) {
  (void)tol;
  struct Params {
    std::string source, expect;
    double lambda;
    asymptotics::PeakKind kind;
    std::vector<double> schedule;
    double exponent = 1.5, scale = 1.0, r_min = 1.0, r_max = 1000.0;
    long long points = 301;
    double r_in = 0.5, r_lo = 5.0, r_hi = 200.0, locate_tol = 1e-10;
    std::string csv;
  } c{};
  c.source = p.text("source", "power", {"power", "example1", "csv"});
  c.lambda = p.number("lambda", 1.5, 0.0);
  c.kind = p.text("kind", "first", {"first", "second"}) == "first" ? asymptotics::PeakKind::first
                                                                      : asymptotics::PeakKind::second;
  c.schedule = p.numbers("schedule", asymptotics::kDefaultSchedule);
  c.expect = p.text("expect", "report", {"report", "nonempty", "empty", "every_sample"});
  if (c.source == "power") {
    Section s = p.child("power");
    c.exponent = s.number("exponent", 1.5, 0.0);
    c.scale = s.positive("scale", 1.0);
    c.r_min = s.positive("r_min", 1.0);
    c.r_max = s.positive("r_max", 1000.0);
    c.points = s.integer("points", 301, 2, 10000000);
    if (!(c.r_max > c.r_min)) s.fail("r_max", "must exceed r_min");
    s.finish();
    p.adopt("power", s);
  } else if (c.source == "example1") {
    Section s = p.child("example1");
    c.r_in = s.positive("r_in", 0.5);
    c.r_lo = s.positive("r_lo", 5.0);
    c.r_hi = s.positive("r_hi", 200.0);
    c.locate_tol = s.positive("locate_tol", 1e-10, 0.0, 1e-3);
    if (!(c.r_in <= c.r_lo && c.r_lo < c.r_hi)) s.fail("r_hi", "need r_in <= r_lo < r_hi");
    s.finish();
    p.adopt("example1", s);
  } else {
    Section s = p.child("csv");
    const auto path = s.text("path", "");
    try {
      c.csv = read_file(path);
      // Record the content hash so a replay can tell whether the input changed.
      s.raw("content_fnv1a", hex64(fnv1a(c.csv)));
      (void)asymptotics::GrowthSample::from_csv(c.csv);
    } catch (const std::exception& e) {
      s.fail("path", e.what());
    }
    s.finish();
    p.adopt("csv", s);
  }

  return [c](Run& run, nlohmann::json& report) {
    std::optional<asymptotics::GrowthSample> g;
    if (c.source == "power") {
      std::vector<std::pair<double, double>> pts;
      const double step = std::log(c.r_max / c.r_min) / static_cast<double>(c.points - 1);
      for (long long k = 0; k < c.points; ++k) {
        const double r = c.r_min * std::exp(step * static_cast<double>(k));
        pts.emplace_back(r, c.scale * std::pow(r, c.exponent));
      }
      g.emplace(std::move(pts));
    } else if (c.source == "example1") {
      const auto f = mero::example1();
      const auto region = rootscan::Region::annulus(c.r_in, c.r_hi);
      rootscan::LocateOptions opts;
      opts.tol = c.locate_tol;
      std::vector<rootscan::CountingFunction> parts;
      for (const auto& t : {mero::Target::zero(), mero::Target::one(), mero::Target::infinity()}) {
        run.log << "scanning " << t.label() << "-points to r = " << c.r_hi << "\n";
        parts.push_back(rootscan::counting(run.cache.roots(f, region, t, opts, run.exec)));
      }
      g.emplace(asymptotics::GrowthSample::from_counting(rootscan::combined(parts), c.r_lo, c.r_hi));
    } else {
      g.emplace(asymptotics::GrowthSample::from_csv(c.csv));
    }
    const auto peaks = asymptotics::polya_peaks(*g, c.lambda, c.kind, c.schedule);
    run.out.write("growth.csv", g->to_csv());
    run.out.write_json("peaks.json", peaks.to_json());

    nlohmann::json per_eps = nlohmann::json::array();
    std::size_t fewest = std::numeric_limits<std::size_t>::max(), most = 0, mismatched = 0;
    for (double eps : c.schedule) {
      const auto at = peaks.at(eps).size();
      std::size_t eligible = 0;
      for (const auto& [r, v] : g->points()) {
        if (eps * r >= g->r_min() * (1.0 - 1e-12) && r / eps <= g->r_max() * (1.0 + 1e-12)) ++eligible;
      }
      per_eps.push_back({{"epsilon", eps}, {"peaks", at}, {"eligible", eligible}});
      fewest = std::min(fewest, at);
      most = std::max(most, at);
      if (at != eligible) ++mismatched;
    }
    report["source"] = c.source;
    report["samples"] = g->points().size();
    report["decades"] = g->decades();
    report["per_epsilon"] = per_eps;
    if (g->decades() >= 3.0) {
      const auto ob = asymptotics::order_bounds(*g);
      report["order_bounds"] = {{"lower_order", ob.lower_order}, {"order", ob.order}, {"slope", ob.slope},
                                {"stderr", ob.stderr_}};
    }
    Checks checks;
    if (c.expect == "nonempty") checks.add("peaks_nonempty", static_cast<double>(fewest), 1, ">=", fewest >= 1);
    if (c.expect == "empty") checks.add("peaks_empty", static_cast<double>(most), 0, "==", most == 0);
    if (c.expect == "every_sample") {
      checks.add("peaks_every_sample", static_cast<double>(mismatched), 0, "== mismatched epsilons", mismatched == 0);
    }
    return checks.finish(report);
  };
}

Command parse_sector_search(Section& p, Section& tol) {
  struct Params {
    long long tuples, n_max;
    double separation, max_delta;
    bool exceptional;
  } c{};
  c.tuples = p.integer("tuples", 1000, 0, 100000000);
  c.n_max = p.integer("n_max", 100000, 1, 1000000000);
  c.separation = p.number("separation", 0.0, 0.0, 1.0);
  c.exceptional = p.boolean("include_exceptional", true);
  c.max_delta = tol.positive("max_delta", pi - 0.01, 0.0, 2.0 * pi);
  if (c.tuples == 0 && !c.exceptional) p.fail("tuples", "nothing to search: no tuples and no exceptional case");

  return [c](Run& run, nlohmann::json& report) {
    std::vector<asymptotics::UnitTuple> tuples;
    for (long long i = 0; i < c.tuples; ++i) {
      tuples.push_back(asymptotics::UnitTuple::random(run.seed, static_cast<std::uint64_t>(i), c.separation));
    }
    // phi = -psi with alpha + beta = pi, where a p^n and b q^n can mirror each other.
    if (c.exceptional) tuples.push_back(asymptotics::UnitTuple::make(0.0, pi, 1.0, -1.0));
    run.log << "searching " << tuples.size() << " tuples up to n = " << c.n_max << "\n";
    const auto res = asymptotics::sector_sweep(tuples, c.n_max, run.exec);
    std::string csv = "index,alpha,beta,phi,psi,best_n,delta\n";
    double worst = 0.0;
    std::size_t worst_index = 0, failures = 0;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const auto& t = tuples[i];
      csv += std::to_string(i) + "," + num(t.alpha) + "," + num(t.beta) + "," + num(t.phi) + "," + num(t.psi) + "," +
             std::to_string(res[i].best_n) + "," + num(res[i].delta) + "\n";
      if (res[i].delta > worst) {
        worst = res[i].delta;
        worst_index = i;
      }
      if (!(res[i].delta < c.max_delta)) ++failures;
    }
    run.out.write("summary.csv", csv);
    report["tuples"] = tuples.size();
    report["n_max"] = c.n_max;
    report["worst"] = {{"index", worst_index}, {"delta", worst}};
    report["failures"] = failures;
    Checks checks;
    checks.add("sector_delta", worst, c.max_delta, "<", failures == 0);
    return checks.finish(report);
  };
}

Command parse_harmonic(Section& p, Section& tol) {
  struct Params {
    std::string mode;
    long long walks;
    harmonic::WalkOptions walk;
    cplx z0;
    double theta0 = 0.0, theta1 = pi / 2.0, epsilon = 0.1;
    std::set<std::string> targets;
    nlohmann::json domain;
    double disk_abs = 0.01, min_estimate = 0.0;
  } c{};
  c.mode = p.text("mode", "disk", {"disk", "domain_h", "domain"});
  c.walks = p.integer("walks", 200000, 2, 10000000000LL);
  c.walk.shell = p.positive("shell", 1e-4, 0.0, 0.5);
  c.walk.max_steps = static_cast<std::size_t>(p.integer("max_steps", 100000, 1, 1000000000));
  c.walk.max_censored = p.number("max_censored", 1e-3, 0.0, 1.0);
  if (c.mode == "disk") {
    Section s = p.child("disk");
    c.z0 = s.point("z", {0.3, 0.2});
    c.theta0 = s.number("theta0", 0.0);
    c.theta1 = s.number("theta1", pi / 2.0);
    if (!(std::abs(c.z0) < 1.0)) s.fail("z", "must lie inside the unit disk");
    if (!(c.theta1 > c.theta0 && c.theta1 - c.theta0 < 2.0 * pi)) s.fail("theta1", "need theta0 < theta1 < theta0 + 2 pi");
    s.finish();
    p.adopt("disk", s);
    c.disk_abs = tol.number("disk_abs", 0.01, 0.0);
  } else if (c.mode == "domain_h") {
    Section s = p.child("domain_h");
    c.epsilon = s.positive("epsilon", 0.1);
    c.z0 = s.point("z0", {0.0, 2.0 * c.epsilon});
    s.finish();
    p.adopt("domain_h", s);
    c.min_estimate = tol.number("min_estimate", 0.0, 0.0, 1.0);
  } else {
    Section s = p.child("domain");
    c.domain = s.raw("boundary", nullptr);
    c.z0 = s.point("z0", 0.0);
    const auto t = s.raw("targets", nlohmann::json::array());
    if (!t.is_array() || t.empty()) s.fail("targets", "expected a nonempty array of piece labels");
    else
      for (const auto& e : t) {
        if (e.is_string()) c.targets.insert(e.get<std::string>());
        else s.fail("targets", "labels must be strings");
      }
    try {
      const auto d = harmonic::PlanarDomain::from_json(c.domain);
      for (const auto& label : c.targets)
        if (!d.labels().count(label)) s.fail("targets", "no piece labelled '" + label + "'");
      if (!d.contains(c.z0)) s.fail("z0", "must lie inside the domain");
    } catch (const std::exception& e) {
      s.fail("boundary", e.what());
    }
    s.finish();
    p.adopt("domain", s);
  }

  return [c](Run& run, nlohmann::json& report) {
    std::optional<harmonic::PlanarDomain> domain;
    std::set<std::string> targets = c.targets;
    if (c.mode == "disk") {
      domain.emplace(harmonic::unit_disk(c.theta0, c.theta1));
      targets = {"target"};
    } else if (c.mode == "domain_h") {
      domain.emplace(harmonic::build_domain_h(c.epsilon));
      targets = {"gamma"};
    } else {
      domain.emplace(harmonic::PlanarDomain::from_json(c.domain));
    }
    run.log << "running " << c.walks << " walks\n";
    const auto est = harmonic::walk_on_spheres(*domain, c.z0, targets, static_cast<std::size_t>(c.walks), run.seed,
                                               c.walk, run.exec);
    run.out.write_json("domain.json", domain->to_json());
    nlohmann::json e = {{"mean", est.mean},        {"stderr", est.stderr_}, {"walks", est.walks},
                        {"censored", est.censored}, {"seed", est.seed},      {"z0", {c.z0.real(), c.z0.imag()}},
                        {"targets", targets}};
    Checks checks;
    if (c.mode == "disk") {
      const double oracle = harmonic::disk_arc_measure(c.z0, c.theta0, c.theta1);
      const double err = std::abs(est.mean - oracle), allowed = std::max(3.0 * est.stderr_, c.disk_abs);
      e["oracle"] = oracle;
      checks.add("disk_oracle", err, allowed, "<=", err <= allowed);
    } else if (c.mode == "domain_h") {
      e["epsilon"] = c.epsilon;
      checks.add("domain_h_floor", est.mean, c.min_estimate, ">=", est.mean >= c.min_estimate);
    }
    run.out.write_json("estimate.json", e);
    // The log gains a row per distinct run; an identical rerun leaves it as is.
    const std::string row = harmonic::estimate_csv_row(est);
    const auto log_path = run.out.root() / "estimates.csv";
    const std::string existing = std::filesystem::exists(log_path) ? read_file(log_path) : "";
    if (existing.find("\n" + row + "\n") == std::string::npos) {
      run.out.append_line("estimates.csv", harmonic::kEstimateCsvHeader, row);
    } else {
      run.out.write("estimates.csv", existing);
    }
    report["estimate"] = e;
    return checks.finish(report);
  };
}

}  // namespace raydist::cli
