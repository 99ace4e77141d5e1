#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "raydist/exec.hpp"
#include "raydist/mero/mero_map.hpp"
#include "raydist/rootscan/region.hpp"
#include "raydist/rootscan/scan.hpp"

namespace raydist::cli {

/// Output directory that remembers what was written into it.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  const std::vector<std::string>& files() const { return files_; }

  void write(const std::string& name, const std::string& content);
  /// Two-space indented JSON with a trailing newline.
  void write_json(const std::string& name, const nlohmann::json& value);
  void append_line(const std::string& name, const std::string& header, const std::string& line);

 private:
  std::filesystem::path root_;
  std::vector<std::string> files_;
};

std::string read_file(const std::filesystem::path& path);

/// Fixed-precision formatting for CSV cells ("%.17g").
std::string num(double v);

/// Root catalogs stored as JSON under a directory, keyed by a hash of
/// (function id, region, target, tolerance). A disabled cache always scans.
class CatalogCache {
 public:
  CatalogCache(std::filesystem::path dir, bool enabled);

  static std::string key(const std::string& function_id, const rootscan::Region& region, const mero::Target& target,
                         double tol);

  std::vector<rootscan::RootRecord> roots(const mero::MeroMap& f, const rootscan::Region& region,
                                          const mero::Target& target, const rootscan::LocateOptions& options,
                                          Exec exec);
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::filesystem::path dir_;
  bool enabled_;
  std::size_t hits_ = 0, misses_ = 0;
};

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<cplx> points;
};

/// Square scatter plot of [-extent, extent]^2 with dashed rays from the
/// origin at the given angles. Output depends only on the arguments.
std::string svg_scatter(const std::vector<SvgSeries>& series, const std::vector<double>& rays, double extent,
                        const std::string& title);

}  // namespace raydist::cli
