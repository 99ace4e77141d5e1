#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "raydist/core.hpp"

namespace raydist::cli {

/// Every problem found while reading a configuration, reported together.
class ConfigError : public DomainError {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class Violations {
 public:
  void add(std::string message) { list_.push_back(std::move(message)); }
  bool empty() const { return list_.empty(); }
  const std::vector<std::string>& list() const { return list_; }
  void raise_if_any() const;

 private:
  std::vector<std::string> list_;
};

/// Typed reader over one JSON object. Each accessor records a violation
/// instead of throwing, falls back to the default, and copies the value it
/// settled on into resolved(), so a run's effective configuration can be
/// written out and replayed. finish() reports keys nobody asked for.
class Section {
 public:
  static constexpr double inf = std::numeric_limits<double>::infinity();

  Section(const nlohmann::json& source, std::string path, Violations& violations);

  double number(const std::string& key, double fallback, double lo = -inf, double hi = inf);
  /// Like number() but the bound lo itself is excluded.
  double positive(const std::string& key, double fallback, double lo = 0.0, double hi = inf);
  long long integer(const std::string& key, long long fallback, long long lo, long long hi);
  bool boolean(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed = {});
  cplx point(const std::string& key, cplx fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  /// Raw JSON value (or the fallback) without validation.
  nlohmann::json raw(const std::string& key, const nlohmann::json& fallback);
  bool has(const std::string& key) const;

  /// Nested object; absent keys read as an empty object.
  Section child(const std::string& key);
  /// Stores a nested reader's resolved values under key.
  void adopt(const std::string& key, const Section& child);

  void fail(const std::string& key, const std::string& message);
  void finish();

  const nlohmann::json& resolved() const { return resolved_; }
  const std::string& path() const { return path_; }

 private:
  const nlohmann::json* lookup(const std::string& key);
  std::string where(const std::string& key) const;

  nlohmann::json source_;
  std::string path_;
  Violations* violations_;
  nlohmann::json resolved_ = nlohmann::json::object();
  std::set<std::string> seen_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace raydist::cli
