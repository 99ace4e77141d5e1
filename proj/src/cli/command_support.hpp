#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "raydist/cli/artifacts.hpp"
#include "raydist/cli/commands.hpp"
#include "raydist/cli/config.hpp"
#include "raydist/exec.hpp"
#include "raydist/mero/mero_map.hpp"
#include "raydist/mero/rational.hpp"

namespace raydist::cli {

/// Everything a validated command needs while it executes.
struct Run {
  OutputDir& out;
  std::uint64_t seed;
  Exec exec;
  bool svg;
  std::ostream& log;
  CatalogCache& cache;
};

/// Named pass/fail checks in evaluation order.
class Checks {
 public:
  void add(const std::string& name, double value, const nlohmann::json& limit, const std::string& relation, bool pass);
  const std::optional<std::string>& first_failure() const { return first_failure_; }
  bool passed() const { return !first_failure_; }
  int exit_code() const { return passed() ? kPass : kCheckFailed; }
  nlohmann::json to_json() const;
  /// Stores the checks (and the first failure) in the report.
  int finish(nlohmann::json& report) const;

 private:
  nlohmann::json list_ = nlohmann::json::array();
  std::optional<std::string> first_failure_;
};

/// A function given by name ("example1", "airy", "exp", "identity") or as
/// {"rational": {"num": [...], "den": [...]}}.
struct FunctionSpec {
  std::string name = "example1";
  std::optional<mero::RationalMap> rational;

  mero::MeroMap make() const;
  nlohmann::json to_json() const;
  /// Rays carrying the a-points of the named examples, for plots.
  std::vector<double> reference_rays() const;
};

FunctionSpec read_function(Section& s, const std::string& key, const std::string& fallback);

/// Parses and validates a command's parameters and returns the closure that
/// executes it. Violations are recorded in the section, not thrown.
using Command = std::function<int(Run&, nlohmann::json& report)>;
using CommandParser = std::function<Command(Section& params, Section& tolerances)>;

Command parse_verify_example1(Section& p, Section& tol);
Command parse_roots(Section& p, Section& tol);
Command parse_schwarzian_check(Section& p, Section& tol);
Command parse_monodromy(Section& p, Section& tol);
Command parse_peaks(Section& p, Section& tol);
Command parse_sector_search(Section& p, Section& tol);
Command parse_harmonic(Section& p, Section& tol);

}  // namespace raydist::cli
