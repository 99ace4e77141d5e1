#include "raydist/asymptotics/peaks.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace raydist::asymptotics {

namespace {

constexpr double kSlack = 1e-12;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GrowthSample::GrowthSample(std::vector<std::pair<double, double>> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw DomainError("growth sample needs at least two points");
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto [r, g] = points_[i];
    if (!(r > 0.0) || !(g > 0.0) || !std::isfinite(r) || !std::isfinite(g)) {
      throw DomainError("growth sample needs finite r > 0 and g > 0");
    }
    if (i > 0 && r == points_[i - 1].first) throw DomainError("growth sample has a repeated r");
    if (i > 0 && g < points_[i - 1].second) throw DomainError("growth sample must be nondecreasing in g");
  }
}

GrowthSample GrowthSample::from_counting(const rootscan::CountingFunction& n, double r_lo, double r_hi) {
  std::vector<std::pair<double, double>> pts;
  const auto& m = n.moduli();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < r_lo || m[i] > r_hi) continue;
    if (i + 1 < m.size() && m[i + 1] == m[i]) continue;
    pts.emplace_back(m[i], static_cast<double>(i + 1));
  }
  return GrowthSample(std::move(pts));
}

std::string GrowthSample::to_csv() const {
  std::string out = "r,g\n";
  for (const auto& [r, g] : points_) out += format_double(r) + "," + format_double(g) + "\n";
  return out;
}

GrowthSample GrowthSample::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,g", 0) != 0) throw DomainError("growth CSV needs the header r,g");
  std::vector<std::pair<double, double>> pts;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("growth CSV: malformed row '" + line + "'");
    try {
      pts.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw DomainError("growth CSV: malformed row '" + line + "'");
    }
  }
  return GrowthSample(std::move(pts));
}

std::string to_string(PeakKind k) { return k == PeakKind::first ? "first" : "second"; }

std::vector<Peak> PeakReport::at(double epsilon) const {
  std::vector<Peak> out;
  for (const auto& p : peaks)
    if (p.epsilon == epsilon) out.push_back(p);
  return out;
}

nlohmann::json PeakReport::to_json() const {
  nlohmann::json j;
  j["lambda"] = lambda;
  j["kind"] = to_string(kind);
  j["schedule"] = schedule;
  j["peaks"] = nlohmann::json::array();
  for (const auto& p : peaks) j["peaks"].push_back({{"index", p.index}, {"r", p.r}, {"epsilon", p.epsilon}});
  j["discretization"] =
      "t ranges over sample points only: t = r_j / r_k with eps <= t <= 1/eps; r_k qualifies only when "
      "[eps r_k, r_k / eps] lies inside the sampled range";
  return j;
}

PeakReport polya_peaks(const GrowthSample& g, double lambda, PeakKind kind, const std::vector<double>& schedule) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("polya_peaks needs lambda >= 0");
  if (schedule.empty()) throw DomainError("polya_peaks needs a nonempty epsilon schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const double eps = schedule[i];
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("polya_peaks: epsilon must lie in (0, 1)");
    if (i > 0 && !(eps < schedule[i - 1])) throw DomainError("polya_peaks: schedule must be decreasing");
    if (g.decades() < 2.0 * std::log10(1.0 / eps) - 1e-9) {
      throw DomainError("polya_peaks: sample spans too few decades for epsilon = " + format_double(eps));
    }
  }
  PeakReport report;
  report.lambda = lambda;
  report.kind = kind;
  report.schedule = schedule;
  const auto& pts = g.points();
  for (double eps : schedule) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto [rk, gk] = pts[k];
      if (eps * rk < g.r_min() * (1.0 - kSlack) || rk / eps > g.r_max() * (1.0 + kSlack)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < pts.size() && ok; ++j) {
        const double t = pts[j].first / rk;
        if (t < eps * (1.0 - kSlack) || t > (1.0 + kSlack) / eps) continue;
        const double model = std::pow(t, lambda) * gk;
        ok = kind == PeakKind::first ? pts[j].second <= (1.0 + eps) * model * (1.0 + kSlack)
                                     : pts[j].second >= (1.0 - eps) * model * (1.0 - kSlack);
      }
      if (ok) report.peaks.push_back({k, rk, eps});
    }
  }
  return report;
}

OrderBounds order_bounds(const GrowthSample& g) {
  if (g.decades() < 3.0 - 1e-9) throw DomainError("order_bounds needs a sample spanning 3 decades");
  const auto& pts = g.points();
  const double lr0 = std::log(pts.front().first), lg0 = std::log(pts.front().second);
  OrderBounds out;
  out.lower_order = std::numeric_limits<double>::infinity();
  out.order = -std::numeric_limits<double>::infinity();
  for (const auto& [r, v] : pts) {
    if (r < g.r_max() / 10.0) continue;
    const double chord = (std::log(v) - lg0) / (std::log(r) - lr0);
    out.lower_order = std::min(out.lower_order, chord);
    out.order = std::max(out.order, chord);
  }
  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [r, v] : pts) {
    mx += std::log(r);
    my += std::log(v);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [r, v] : pts) {
    sxx += (std::log(r) - mx) * (std::log(r) - mx);
    sxy += (std::log(r) - mx) * (std::log(v) - my);
  }
  out.slope = sxy / sxx;
  double rss = 0.0;
  for (const auto& [r, v] : pts) {
    const double e = std::log(v) - my - out.slope * (std::log(r) - mx);
    rss += e * e;
  }
  out.stderr_ = pts.size() > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : 0.0;
  return out;
}

}  // namespace raydist::asymptotics
