#include <map>

#include <omp.h>

#include "command_support.hpp"
#include "raydist/core.hpp"

#ifndef RAYDIST_VERSION
#define RAYDIST_VERSION "0.0.0"
#endif

namespace raydist::cli {

namespace {

const std::map<std::string, CommandParser>& registry() {
  static const std::map<std::string, CommandParser> r = {
      {"verify-example1", parse_verify_example1}, {"roots", parse_roots},
      {"schwarzian-check", parse_schwarzian_check}, {"monodromy", parse_monodromy},
      {"peaks", parse_peaks},                     {"sector-search", parse_sector_search},
      {"harmonic", parse_harmonic},
  };
  return r;
}

constexpr std::uint64_t kDefaultSeed = 20250101;

nlohmann::json versions() {
  return {{"raydist", RAYDIST_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"compiler", __VERSION__}};
}

// A manifest from an earlier run replays that run's effective config.
nlohmann::json unwrap_manifest(const std::string& command, const nlohmann::json& config) {
  if (!config.is_object() || config.value("tool", "") != "raydist" || !config.contains("config")) return config;
  if (config.value("command", "") != command) {
    throw ConfigError({"manifest was written by '" + config.value("command", "?") + "', not '" + command + "'"});
  }
  return config.at("config");
}

struct Parsed {
  nlohmann::json resolved;
  Command command;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string cache_dir;
  bool cache = true;
  int jobs = 1;
};

Parsed parse(const std::string& name, const nlohmann::json& raw, const RunRequest* request) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError({"unknown command '" + name + "'"});
  const nlohmann::json config = unwrap_manifest(name, raw);

  Violations v;
  Section root(config, "", v);
  Parsed p;
  if (request && request->seed) {
    p.seed = *request->seed;
    root.raw("seed", nullptr);
  } else if (root.has("seed")) {
    const auto s = root.raw("seed", nullptr);
    if (s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0)) p.seed = s.get<std::uint64_t>();
    else root.fail("seed", "expected a nonnegative integer");
  }
  p.out = root.text("out", "out/" + name);
  p.cache = root.boolean("cache", true);
  p.cache_dir = root.text("cache_dir", "");
  p.jobs = static_cast<int>(root.integer("jobs", 1, 1, 1024));
  Section tolerances = root.child("tolerances");
  Section params = root.child("params");
  p.command = it->second(params, tolerances);
  params.finish();
  tolerances.finish();
  root.finish();
  v.raise_if_any();

  // Output placement and parallelism do not change results, so they stay
  // out of the hashed configuration.
  p.resolved = {{"seed", p.seed}, {"cache", p.cache}, {"params", params.resolved()},
                {"tolerances", tolerances.resolved()}};
  return p;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

nlohmann::json resolve_config(const std::string& command, const nlohmann::json& config) {
  return parse(command, config, nullptr).resolved;
}

int run(const RunRequest& request, std::ostream& log, std::ostream& err) {
  Parsed p;
  try {
    p = parse(request.command, request.config, &request);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kConfigError;
  }
  const std::string out_path = request.out ? request.out->string() : p.out;
  const int jobs = request.jobs ? *request.jobs : p.jobs;
  if (jobs < 1) {
    err << "invalid configuration:\n  - jobs: must be >= 1\n";
    return kConfigError;
  }
  omp_set_num_threads(jobs);

  nlohmann::json manifest = {{"tool", "raydist"},
                             {"command", request.command},
                             {"versions", versions()},
                             {"seed", p.seed},
                             {"config_hash", hex64(fnv1a(p.resolved.dump()))},
                             {"config", p.resolved}};
  int code = kPass;
  std::optional<OutputDir> out;
  try {
    out.emplace(out_path);
    CatalogCache cache(p.cache_dir.empty() ? out->root() / "cache" : std::filesystem::path(p.cache_dir), p.cache);
    Run ctx{*out, p.seed, jobs > 1 ? Exec::parallel : Exec::serial, request.svg, log, cache};
    nlohmann::json report = {{"command", request.command}, {"seed", p.seed}};
    code = p.command(ctx, report);
    report["exit_code"] = code;
    out->write_json("report.json", report);
    if (code == kCheckFailed) err << "check failed: " << report.value("first_failure", "?") << "\n";
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    code = kConfigError;
    manifest["error"] = e.what();
  } catch (const Error& e) {
    err << "numerical quality error: " << e.what() << "\n";
    code = kQualityError;
    manifest["error"] = e.what();
  }
  if (!out) return code;
  std::vector<std::string> files = out->files();
  files.push_back("manifest.json");
  manifest["outputs"] = files;
  manifest["exit_code"] = code;
  out->write_json("manifest.json", manifest);
  log << request.command << ": exit " << code << ", outputs in " << out->root().string() << "\n";
  return code;
}

void Checks::add(const std::string& name, double value, const nlohmann::json& limit, const std::string& relation,
                 bool pass) {
  list_.push_back({{"name", name}, {"value", value}, {"limit", limit}, {"relation", relation}, {"pass", pass}});
  if (!pass && !first_failure_) first_failure_ = name;
}

nlohmann::json Checks::to_json() const { return list_; }

int Checks::finish(nlohmann::json& report) const {
  report["checks"] = list_;
  report["passed"] = passed();
  if (first_failure_) report["first_failure"] = *first_failure_;
  return exit_code();
}

mero::MeroMap FunctionSpec::make() const {
  if (rational) return rational->as_mero("rational:" + hex64(fnv1a(rational->to_json().dump())));
  if (name == "example1") return mero::example1();
  if (name == "airy") return mero::airy_map();
  if (name == "exp") return mero::exp_map();
  return mero::identity_map();
}

nlohmann::json FunctionSpec::to_json() const {
  if (rational) return {{"rational", rational->to_json()}};
  return name;
}

std::vector<double> FunctionSpec::reference_rays() const {
  if (rational) return {};
  if (name == "example1") return {pi / 3.0, pi, -pi / 3.0};
  if (name == "airy") return {pi};
  return {};
}

FunctionSpec read_function(Section& s, const std::string& key, const std::string& fallback) {
  FunctionSpec spec;
  spec.name = fallback;
  const nlohmann::json j = s.raw(key, fallback);
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "example1" || name == "airy" || name == "exp" || name == "identity") spec.name = name;
    else s.fail(key, "unknown function '" + name + "' (example1, airy, exp, identity or {\"rational\": ...})");
  } else if (j.is_object() && j.contains("rational") && j.size() == 1) {
    try {
      spec.rational = mero::RationalMap::from_json(j.at("rational"));
      spec.name = "rational";
    } catch (const std::exception& e) {
      s.fail(key, std::string("bad rational map: ") + e.what());
    }
  } else {
    s.fail(key, "expected a function name or {\"rational\": {\"num\": ..., \"den\": ...}}");
  }
  return spec;
}

}  // namespace raydist::cli
