#include "raydist/cli/artifacts.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "raydist/cli/config.hpp"

namespace raydist::cli {

namespace fs = std::filesystem;

OutputDir::OutputDir(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw DomainError("cannot create output directory " + root_.string() + ": " + ec.message());
}

void OutputDir::write(const std::string& name, const std::string& content) {
  std::ofstream out(root_ / name, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write " + (root_ / name).string());
  out << content;
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

void OutputDir::write_json(const std::string& name, const nlohmann::json& value) { write(name, value.dump(2) + "\n"); }

void OutputDir::append_line(const std::string& name, const std::string& header, const std::string& line) {
  const fs::path p = root_ / name;
  const bool fresh = !fs::exists(p) || fs::file_size(p) == 0;
  std::ofstream out(p, std::ios::binary | std::ios::app);
  if (!out) throw DomainError("cannot append to " + p.string());
  if (fresh) out << header << "\n";
  out << line << "\n";
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CatalogCache::CatalogCache(fs::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

std::string CatalogCache::key(const std::string& function_id, const rootscan::Region& region,
                              const mero::Target& target, double tol) {
  return hex64(fnv1a(function_id + "|" + region.to_json().dump() + "|" + target.label() + "|" + num(tol)));
}

std::vector<rootscan::RootRecord> CatalogCache::roots(const mero::MeroMap& f, const rootscan::Region& region,
                                                      const mero::Target& target,
                                                      const rootscan::LocateOptions& options, Exec exec) {
  const fs::path file = dir_ / (key(f.id(), region, target, options.tol) + ".json");
  if (enabled_ && fs::exists(file)) {
    try {
      auto j = nlohmann::json::parse(read_file(file));
      // Guard against hash collisions: the stored key fields must match.
      if (j.at("function") == f.id() && j.at("target") == target.label() && j.at("region") == region.to_json() &&
          j.value("tol", -1.0) == options.tol) {
        ++hits_;
        return rootscan::catalog_from_json(j);
      }
    } catch (const std::exception&) {
      // Unreadable entries are rescanned and overwritten.
    }
  }
  ++misses_;
  auto roots = rootscan::locate_roots(f, region, target, options, exec);
  if (enabled_) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    auto j = rootscan::catalog_to_json(f.id(), target, region, roots);
    j["tol"] = options.tol;
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (out) out << j.dump() << "\n";
  }
  return roots;
}

std::string svg_scatter(const std::vector<SvgSeries>& series, const std::vector<double>& rays, double extent,
                        const std::string& title) {
  if (!(extent > 0.0)) throw DomainError("svg_scatter needs a positive extent");
  constexpr double size = 600.0, pad = 30.0;
  const double scale = (size - 2.0 * pad) / (2.0 * extent);
  auto px = [&](cplx z) { return std::pair{pad + (z.real() + extent) * scale, pad + (extent - z.imag()) * scale}; };
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                size, size + 20.0 * static_cast<double>(series.size()), size,
                size + 20.0 * static_cast<double>(series.size()));
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<title>" + title + "</title>\n";
  const auto [ox, oy] = px(0.0);
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ccc\"/>\n"
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ccc\"/>\n",
                pad, oy, size - pad, oy, ox, pad, ox, size - pad);
  out += buf;
  for (double theta : rays) {
    const auto [x1, y1] = px(std::polar(extent * std::sqrt(2.0), theta));
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n",
                  ox, oy, x1, y1);
    out += buf;
  }
  out += "<clipPath id=\"plot\"><rect x=\"" + num(pad) + "\" y=\"" + num(pad) + "\" width=\"" + num(size - 2 * pad) +
         "\" height=\"" + num(size - 2 * pad) + "\"/></clipPath>\n<g clip-path=\"url(#plot)\">\n";
  for (const auto& s : series) {
    for (cplx z : s.points) {
      if (std::abs(z.real()) > extent || std::abs(z.imag()) > extent) continue;
      const auto [x, y] = px(z);
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>\n", x, y,
                    s.color.c_str());
      out += buf;
    }
  }
  out += "</g>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = size + 14.0 * 1.0 + 20.0 * static_cast<double>(i) - 4.0;
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"%s\"/><text x=\"%.2f\" y=\"%.2f\" "
                  "font-size=\"12\" font-family=\"sans-serif\">",
                  pad, y - 4.0, series[i].color.c_str(), pad + 10.0, y);
    out += buf;
    out += series[i].label + " (" + std::to_string(series[i].points.size()) + ")</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace raydist::cli
