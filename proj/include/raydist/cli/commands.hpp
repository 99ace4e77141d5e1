#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace raydist::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kConfigError = 2, kQualityError = 3 };

/// One invocation: the subcommand, its JSON configuration and the
/// command-line overrides (which win over the matching config keys).
struct RunRequest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  bool svg = false;
};

const std::vector<std::string>& command_names();

/// Runs a subcommand and returns its exit code. Progress goes to `log`,
/// diagnostics to `err`. A manifest written by an earlier run is accepted
/// as the configuration and replays that run.
int run(const RunRequest& request, std::ostream& log, std::ostream& err);

/// Effective configuration of a run with every default filled in, as it
/// appears under "config" in the manifest. Throws ConfigError.
nlohmann::json resolve_config(const std::string& command, const nlohmann::json& config);

}  // namespace raydist::cli
