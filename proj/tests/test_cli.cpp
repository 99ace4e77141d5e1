#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "raydist/cli/artifacts.hpp"
#include "raydist/cli/commands.hpp"
#include "raydist/cli/config.hpp"
#include "raydist/mero/mero_map.hpp"

using namespace raydist;
using namespace raydist::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string log, err;
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "raydist_test_cli" / name;
  fs::remove_all(dir);
  return dir;
}

Outcome invoke(const std::string& command, const nlohmann::json& config, const fs::path& out,
               std::optional<int> jobs = std::nullopt, bool svg = false) {
  RunRequest r;
  r.command = command;
  r.config = config;
  r.out = out;
  r.jobs = jobs;
  r.svg = svg;
  std::ostringstream log, err;
  Outcome o;
  o.code = run(r, log, err);
  o.log = log.str();
  o.err = err.str();
  return o;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(read_file(p)); }

// Small configurations whose complete outputs are pinned by golden files.
const std::vector<std::pair<std::string, nlohmann::json>>& golden_runs() {
  static const std::vector<std::pair<std::string, nlohmann::json>> runs = {
      {"roots",
       {{"seed", 1},
        {"params",
         {{"function", "example1"},
          {"region", {{"kind", "annulus"}, {"r_in", 0.5}, {"r_out", 6.0}}},
          {"target", "1"},
          {"ray", pi}}}}},
      {"sector-search", {{"seed", 2}, {"params", {{"tuples", 40}, {"n_max", 2000}}}}},
      {"harmonic", {{"seed", 3}, {"params", {{"mode", "disk"}, {"walks", 4000}}}}},
  };
  return runs;
}

}  // namespace

TEST_CASE("FNV-1a test vectors") {
  CHECK(hex64(fnv1a("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
  CHECK(hex64(fnv1a("foobar")) == "85944171f73967e8");
}

TEST_CASE("configuration errors list every violation and exit 2") {
  const nlohmann::json config = {{"params", {{"walks", -5}, {"mode", "sphere"}, {"bogus", 1}}}, {"extra", true}};
  const auto o = invoke("harmonic", config, scratch("violations"));
  CHECK(o.code == kConfigError);
  CHECK(o.err.find("walks") != std::string::npos);
  CHECK(o.err.find("mode") != std::string::npos);
  CHECK(o.err.find("bogus") != std::string::npos);
  CHECK(o.err.find("extra") != std::string::npos);
  try {
    resolve_config("harmonic", config);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() == 4);
  }
  CHECK(invoke("no-such-command", {}, scratch("unknown")).code == kConfigError);
  CHECK(invoke("monodromy", {{"params", {{"tol", 1.0}}}}, scratch("bad_tol")).code == kConfigError);
  CHECK(invoke("roots", {{"params", {{"function", "gamma"}}}}, scratch("bad_fn")).code == kConfigError);
}

TEST_CASE("resolved configs carry every default") {
  const auto r = resolve_config("harmonic", nlohmann::json::object());
  CHECK(r.at("params").at("walks") == 200000);
  CHECK(r.at("params").at("mode") == "disk");
  CHECK(r.at("tolerances").at("disk_abs") == 0.01);
  CHECK(resolve_config("harmonic", r) == r);
  for (const auto& name : command_names()) {
    CAPTURE(name);
    const auto once = resolve_config(name, nlohmann::json::object());
    CHECK(resolve_config(name, once) == once);
  }
}

TEST_CASE("numerical quality problems exit 3") {
  const auto dir = scratch("quality");
  const auto o = invoke("harmonic", {{"params", {{"walks", 200}, {"max_steps", 1}}}}, dir);
  CHECK(o.code == kQualityError);
  CHECK(o.err.find("censored") != std::string::npos);
  const auto manifest = read_json(dir / "manifest.json");
  CHECK(manifest.at("exit_code") == kQualityError);
  CHECK(manifest.contains("error"));
}

TEST_CASE("harmonic disk self-test passes") {
  const auto dir = scratch("disk");
  const auto o = invoke("harmonic", {{"params", {{"walks", 200000}}}}, dir, 4);
  CHECK(o.code == kPass);
  const auto report = read_json(dir / "report.json");
  const auto& e = report.at("estimate");
  CHECK(std::abs(e.at("mean").get<double>() - e.at("oracle").get<double>()) <=
        std::max(3.0 * e.at("stderr").get<double>(), 0.01));
}

TEST_CASE("monodromy defaults are projectively scalar") {
  const auto dir = scratch("monodromy");
  CHECK(invoke("monodromy", nlohmann::json::object(), dir).code == kPass);
  const auto report = read_json(dir / "report.json");
  CHECK(report.at("checks").at(0).at("value").get<double>() <= 1e-6);
  const auto bent = scratch("monodromy_bent");
  const auto o = invoke("monodromy", {{"params", {{"c_scale", 1.01}, {"expect", "scalar"}}}}, bent);
  CHECK(o.code == kCheckFailed);
  CHECK(invoke("monodromy", {{"params", {{"c_scale", 1.01}, {"expect", "nonscalar"}}}}, bent).code == kPass);
}

TEST_CASE("verify-example1 names the first failing check") {
  const auto dir = scratch("verify_fail");
  const auto o = invoke("verify-example1", {{"tolerances", {{"schwarzian_residual", 1e-30}}}}, dir, 4);
  CHECK(o.code == kCheckFailed);
  CHECK(o.err.find("schwarzian_residual") != std::string::npos);
  CHECK(read_json(dir / "report.json").at("first_failure") == "schwarzian_residual");
}

TEST_CASE("roots in the annulus [0.5, 10] with target 1") {
  const auto dir = scratch("roots_one");
  const nlohmann::json config = {
      {"params", {{"target", "1"}, {"region", {{"kind", "annulus"}, {"r_in", 0.5}, {"r_out", 10.0}}}, {"ray", pi}}}};
  CHECK(invoke("roots", config, dir, 4, true).code == kPass);
  const auto report = read_json(dir / "report.json");
  CHECK(report.at("count") == 6);
  CHECK(fs::exists(dir / "roots.svg"));
  CHECK(read_file(dir / "roots.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("outputs are byte-identical across reruns and thread counts") {
  for (const auto& [command, config] : golden_runs()) {
    CAPTURE(command);
    const auto a = scratch(command + "_a"), b = scratch(command + "_b");
    REQUIRE(invoke(command, config, a, 1).code == kPass);
    REQUIRE(invoke(command, config, b, 4).code == kPass);
    const auto manifest = read_json(a / "manifest.json");
    for (const auto& name : manifest.at("outputs")) {
      CAPTURE(name);
      CHECK(read_file(a / name.get<std::string>()) == read_file(b / name.get<std::string>()));
    }
  }
}

TEST_CASE("outputs match the golden files") {
  const fs::path golden = fs::path(RAYDIST_TEST_DATA_DIR) / "golden";
  const bool update = std::getenv("RAYDIST_UPDATE_GOLDEN") != nullptr;
  for (const auto& [command, config] : golden_runs()) {
    CAPTURE(command);
    const auto dir = scratch(command + "_golden");
    REQUIRE(invoke(command, config, dir).code == kPass);
    auto manifest = read_json(dir / "manifest.json");
    for (const auto& entry : manifest.at("outputs")) {
      const auto name = entry.get<std::string>();
      // Versions name the compiler, so the manifest is pinned without them.
      std::string produced = read_file(dir / name);
      if (name == "manifest.json") {
        auto m = nlohmann::json::parse(produced);
        m.erase("versions");
        produced = m.dump(2) + "\n";
      }
      const fs::path expected = golden / command / name;
      if (update) {
        fs::create_directories(expected.parent_path());
        std::ofstream(expected, std::ios::binary) << produced;
      }
      CAPTURE(name);
      REQUIRE(fs::exists(expected));
      CHECK(read_file(expected) == produced);
    }
  }
}

TEST_CASE("a manifest replays its run") {
  const auto [command, config] = golden_runs().at(1);
  const auto first = scratch("replay_first"), second = scratch("replay_second");
  REQUIRE(invoke(command, config, first).code == kPass);
  const auto manifest = read_json(first / "manifest.json");
  REQUIRE(invoke(command, manifest, second).code == kPass);
  for (const auto& name : manifest.at("outputs")) {
    CAPTURE(name);
    CHECK(read_file(first / name.get<std::string>()) == read_file(second / name.get<std::string>()));
  }
  CHECK(manifest.at("config_hash") == hex64(fnv1a(manifest.at("config").dump())));
  CHECK(manifest.at("seed") == 2);
  CHECK(invoke("harmonic", manifest, scratch("replay_wrong")).code == kConfigError);
}

TEST_CASE("seed flag overrides the config seed") {
  RunRequest r;
  r.command = "harmonic";
  r.config = {{"seed", 5}, {"params", {{"walks", 1000}}}};
  r.out = scratch("seed_flag");
  r.seed = 77;
  std::ostringstream log, err;
  REQUIRE(run(r, log, err) == kPass);
  CHECK(read_json(*r.out / "manifest.json").at("seed") == 77);
  CHECK(read_json(*r.out / "estimate.json").at("seed") == 77);
}

TEST_CASE("identical harmonic reruns leave the estimate log unchanged") {
  const auto dir = scratch("estimates_log");
  const nlohmann::json config = {{"params", {{"walks", 1000}}}};
  REQUIRE(invoke("harmonic", config, dir).code == kPass);
  const auto once = read_file(dir / "estimates.csv");
  REQUIRE(invoke("harmonic", config, dir).code == kPass);
  CHECK(read_file(dir / "estimates.csv") == once);
  REQUIRE(invoke("harmonic", {{"seed", 8}, {"params", {{"walks", 1000}}}}, dir).code == kPass);
  const auto twice = read_file(dir / "estimates.csv");
  CHECK(std::count(twice.begin(), twice.end(), '\n') == 3);
}

TEST_CASE("catalog cache hits on a repeated scan") {
  const auto dir = scratch("cache");
  const auto f = mero::example1();
  const auto region = rootscan::Region::annulus(0.5, 4.0);
  CatalogCache cache(dir, true);
  const auto first = cache.roots(f, region, mero::Target::zero(), {}, Exec::serial);
  const auto second = cache.roots(f, region, mero::Target::zero(), {}, Exec::serial);
  CHECK(cache.misses() == 1);
  CHECK(cache.hits() == 1);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i].location == second[i].location);
  CatalogCache fresh(dir, true);
  fresh.roots(f, region, mero::Target::zero(), {}, Exec::serial);
  CHECK(fresh.hits() == 1);
  CatalogCache off(dir, false);
  off.roots(f, region, mero::Target::zero(), {}, Exec::serial);
  CHECK(off.hits() == 0);
  CHECK(CatalogCache::key(f.id(), region, mero::Target::zero(), 1e-10) !=
        CatalogCache::key(f.id(), region, mero::Target::one(), 1e-10));
}

TEST_CASE("every command has a versioned config schema") {
  for (const auto& name : command_names()) {
    CAPTURE(name);
    const fs::path p = fs::path(RAYDIST_TEST_SCHEMA_DIR) / (name + ".schema.json");
    REQUIRE(fs::exists(p));
    const auto schema = read_json(p);
    CHECK(schema.contains("$schema"));
    CHECK(schema.at("properties").contains("params"));
  }
}
