#include <iostream>

#include <CLI11.hpp>

#include "raydist/cli/artifacts.hpp"
#include "raydist/cli/commands.hpp"

namespace {

const char* describe(const std::string& name) {
  if (name == "verify-example1") return "Scan, ray, Schwarzian, sector and growth checks for Example 1";
  if (name == "roots") return "Locate the a-points of a function in a region";
  if (name == "schwarzian-check") return "Compare S(f) with an expected rational map on a seeded grid";
  if (name == "monodromy") return "Monodromy of w'' + (Q/2) w = 0 for the Elfving family";
  if (name == "peaks") return "Polya peaks of a growth sample";
  if (name == "sector-search") return "Smallest sector through 1, a p^n, b q^n over seeded tuples";
  if (name == "harmonic") return "Walk-on-spheres harmonic measure";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = raydist::cli;
  CLI::App app{"raydist: radially distributed a-points of meromorphic functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RAYDIST_VERSION);

  std::string config_path, out;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool svg = false;
  for (const auto& name : cli::command_names()) {
    auto* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--config", config_path, "JSON configuration (or a manifest.json to replay)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--seed", seed, "Seed (overrides the config)");
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--svg", svg, "Also write SVG plots of root loci");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }

  cli::RunRequest request;
  for (auto* sub : app.get_subcommands()) {
    request.command = sub->get_name();
    if (sub->count("--out")) request.out = out;
    if (sub->count("--seed")) request.seed = seed;
    if (sub->count("--jobs")) request.jobs = jobs;
  }
  request.svg = svg;
  if (!config_path.empty()) {
    try {
      request.config = nlohmann::json::parse(cli::read_file(config_path));
    } catch (const std::exception& e) {
      std::cerr << "invalid configuration:\n  - " << config_path << ": " << e.what() << "\n";
      return cli::kConfigError;
    }
  }
  return cli::run(request, std::cout, std::cerr);
}
