#include "raydist/cli/config.hpp"

#include <cmath>
#include <cstdio>

namespace raydist::cli {

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out = "invalid configuration:";
  for (const auto& l : lines) out += "\n  - " + l;
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : DomainError(join(violations)), violations_(std::move(violations)) {}

void Violations::raise_if_any() const {
  if (!list_.empty()) throw ConfigError(list_);
}

Section::Section(const nlohmann::json& source, std::string path, Violations& violations)
    : source_(source), path_(std::move(path)), violations_(&violations) {
  if (source_.is_null()) source_ = nlohmann::json::object();
  if (!source_.is_object()) {
    violations_->add((path_.empty() ? std::string("config") : path_) + ": expected an object");
    source_ = nlohmann::json::object();
  }
}

std::string Section::where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

void Section::fail(const std::string& key, const std::string& message) { violations_->add(where(key) + ": " + message); }

const nlohmann::json* Section::lookup(const std::string& key) {
  seen_.insert(key);
  auto it = source_.find(key);
  return it == source_.end() || it->is_null() ? nullptr : &*it;
}

bool Section::has(const std::string& key) const { return source_.contains(key) && !source_.at(key).is_null(); }

double Section::number(const std::string& key, double fallback, double lo, double hi) {
  double v = fallback;
  if (const auto* j = lookup(key)) {
    if (!j->is_number()) {
      fail(key, "expected a number");
    } else if (const double x = j->get<double>(); !std::isfinite(x) || x < lo || x > hi) {
      fail(key, "value " + fmt(x) + " outside [" + fmt(lo) + ", " + fmt(hi) + "]");
    } else {
      v = x;
    }
  }
  resolved_[key] = v;
  return v;
}

double Section::positive(const std::string& key, double fallback, double lo, double hi) {
  double v = fallback;
  if (const auto* j = lookup(key)) {
    if (!j->is_number()) {
      fail(key, "expected a number");
    } else if (const double x = j->get<double>(); !std::isfinite(x) || !(x > lo) || x > hi) {
      fail(key, "value " + fmt(x) + " outside (" + fmt(lo) + ", " + fmt(hi) + "]");
    } else {
      v = x;
    }
  }
  resolved_[key] = v;
  return v;
}

long long Section::integer(const std::string& key, long long fallback, long long lo, long long hi) {
  long long v = fallback;
  if (const auto* j = lookup(key)) {
    if (!j->is_number_integer()) {
      fail(key, "expected an integer");
    } else if (const long long x = j->get<long long>(); x < lo || x > hi) {
      fail(key, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    } else {
      v = x;
    }
  }
  resolved_[key] = v;
  return v;
}

bool Section::boolean(const std::string& key, bool fallback) {
  bool v = fallback;
  if (const auto* j = lookup(key)) {
    if (!j->is_boolean()) fail(key, "expected true or false");
    else v = j->get<bool>();
  }
  resolved_[key] = v;
  return v;
}

std::string Section::text(const std::string& key, const std::string& fallback,
                          const std::vector<std::string>& allowed) {
  std::string v = fallback;
  if (const auto* j = lookup(key)) {
    if (!j->is_string()) {
      fail(key, "expected a string");
    } else {
      const auto s = j->get<std::string>();
      bool ok = allowed.empty();
      for (const auto& a : allowed) ok = ok || a == s;
      if (ok) {
        v = s;
      } else {
        std::string opts;
        for (const auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
        fail(key, "'" + s + "' is not one of " + opts);
      }
    }
  }
  resolved_[key] = v;
  return v;
}

cplx Section::point(const std::string& key, cplx fallback) {
  cplx v = fallback;
  if (const auto* j = lookup(key)) {
    if (!j->is_array() || j->size() != 2 || !(*j)[0].is_number() || !(*j)[1].is_number()) {
      fail(key, "expected [re, im]");
    } else {
      v = {(*j)[0].get<double>(), (*j)[1].get<double>()};
      if (!is_finite(v)) {
        fail(key, "non-finite point");
        v = fallback;
      }
    }
  }
  resolved_[key] = {v.real(), v.imag()};
  return v;
}

std::vector<double> Section::numbers(const std::string& key, const std::vector<double>& fallback) {
  std::vector<double> v = fallback;
  if (const auto* j = lookup(key)) {
    bool ok = j->is_array() && !j->empty();
    if (ok)
      for (const auto& e : *j) ok = ok && e.is_number() && std::isfinite(e.get<double>());
    if (ok) v = j->get<std::vector<double>>();
    else fail(key, "expected a nonempty array of finite numbers");
  }
  resolved_[key] = v;
  return v;
}

nlohmann::json Section::raw(const std::string& key, const nlohmann::json& fallback) {
  const auto* j = lookup(key);
  nlohmann::json v = j ? *j : fallback;
  resolved_[key] = v;
  return v;
}

Section Section::child(const std::string& key) {
  const auto* j = lookup(key);
  return Section(j ? *j : nlohmann::json::object(), where(key), *violations_);
}

void Section::adopt(const std::string& key, const Section& child) { resolved_[key] = child.resolved(); }

void Section::finish() {
  for (auto it = source_.begin(); it != source_.end(); ++it) {
    if (!seen_.count(it.key())) violations_->add(where(it.key()) + ": unknown key");
  }
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace raydist::cli
