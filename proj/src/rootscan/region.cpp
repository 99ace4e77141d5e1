#include "raydist/rootscan/region.hpp"

#include <algorithm>

namespace raydist::rootscan {

Region Region::rectangle(cplx lo, cplx hi) {
  if (!is_finite(lo) || !is_finite(hi) || !(lo.real() < hi.real()) || !(lo.imag() < hi.imag())) {
    throw DomainError("rectangle needs lo < hi in both coordinates");
  }
  Region r;
  r.kind_ = Kind::rectangle;
  r.lo_ = lo;
  r.hi_ = hi;
  return r;
}

Region Region::annulus_sector(double r_in, double r_out, double theta_lo, double theta_hi) {
  if (!(r_in >= 0.0) || !(r_out > r_in) || !std::isfinite(r_out)) {
    throw DomainError("annulus sector needs 0 <= r_in < r_out");
  }
  if (!(theta_lo < theta_hi)) throw DomainError("annulus sector needs theta_lo < theta_hi");
  if (theta_hi - theta_lo >= 2.0 * pi) {
    throw DomainError("annulus sector spans a full turn; use Region::annulus");
  }
  Region r;
  r.kind_ = Kind::annulus_sector;
  r.r_in_ = r_in;
  r.r_out_ = r_out;
  r.theta_lo_ = theta_lo;
  r.theta_hi_ = theta_hi;
  return r;
}

Region Region::annulus(double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in) || !std::isfinite(r_out)) {
    throw DomainError("full annulus needs 0 < r_in < r_out");
  }
  Region r;
  r.kind_ = Kind::annulus_sector;
  r.full_ = true;
  r.r_in_ = r_in;
  r.r_out_ = r_out;
  r.theta_lo_ = -pi;
  r.theta_hi_ = pi;
  return r;
}

std::vector<std::vector<Segment>> Region::contours() const {
  if (kind_ == Kind::rectangle) {
    const cplx a = lo_, b(hi_.real(), lo_.imag()), c = hi_, d(lo_.real(), hi_.imag());
    return {{Segment::line(a, b), Segment::line(b, c), Segment::line(c, d), Segment::line(d, a)}};
  }
  if (full_) {
    return {{Segment::arc(0.0, r_out_, theta_lo_, theta_hi_)}, {Segment::arc(0.0, r_in_, theta_hi_, theta_lo_)}};
  }
  std::vector<Segment> loop;
  const cplx outer_hi = std::polar(r_out_, theta_hi_), outer_lo = std::polar(r_out_, theta_lo_);
  const cplx inner_hi = std::polar(r_in_, theta_hi_), inner_lo = std::polar(r_in_, theta_lo_);
  loop.push_back(Segment::arc(0.0, r_out_, theta_lo_, theta_hi_));
  loop.push_back(Segment::line(outer_hi, inner_hi));
  if (r_in_ > 0.0) loop.push_back(Segment::arc(0.0, r_in_, theta_hi_, theta_lo_));
  loop.push_back(Segment::line(inner_lo, outer_lo));
  return {loop};
}

bool Region::contains(cplx z, double slack) const {
  if (kind_ == Kind::rectangle) {
    return z.real() >= lo_.real() - slack && z.real() <= hi_.real() + slack && z.imag() >= lo_.imag() - slack &&
           z.imag() <= hi_.imag() + slack;
  }
  const double r = std::abs(z);
  if (r < r_in_ - slack || r > r_out_ + slack) return false;
  if (full_) return true;
  const double mid = 0.5 * (theta_lo_ + theta_hi_);
  const double off = std::abs(wrap_angle(std::arg(z) - mid));
  const double half = 0.5 * (theta_hi_ - theta_lo_);
  return off <= half || (r > 0.0 && (off - half) * r <= slack) || r <= slack;
}

double Region::diameter() const {
  if (kind_ == Kind::rectangle) return std::abs(hi_ - lo_);
  if (full_) return 2.0 * r_out_;
  // Largest distance among the corner points and the outer arc chord.
  const double span = theta_hi_ - theta_lo_;
  const double chord = 2.0 * r_out_ * std::sin(std::min(span, pi) / 2.0);
  return std::max(chord, std::abs(std::polar(r_out_, theta_lo_) - std::polar(r_in_, theta_hi_)));
}

cplx Region::center() const {
  if (kind_ == Kind::rectangle) return 0.5 * (lo_ + hi_);
  const double r = 0.5 * (r_in_ + r_out_);
  return std::polar(r, 0.5 * (theta_lo_ + theta_hi_));
}

Region Region::dilated(double factor) const {
  if (!(factor >= 1.0)) throw DomainError("dilation factor must be >= 1");
  if (kind_ == Kind::rectangle) {
    const cplx c = center(), half = 0.5 * (hi_ - lo_) * factor;
    return rectangle(c - half, c + half);
  }
  if (full_) return annulus(r_in_ / factor, r_out_ * factor);
  const double mid = 0.5 * (theta_lo_ + theta_hi_);
  const double half = std::min(0.5 * (theta_hi_ - theta_lo_) * factor, pi * (1.0 - 1e-12));
  return annulus_sector(r_in_ / factor, r_out_ * factor, mid - half, mid + half);
}

std::vector<Region> Region::split(double fraction) const {
  if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("split fraction must lie in (0, 1)");
  if (kind_ == Kind::rectangle) {
    const double w = hi_.real() - lo_.real(), h = hi_.imag() - lo_.imag();
    const double xm = lo_.real() + fraction * w, ym = lo_.imag() + fraction * h;
    if (w > 2.0 * h) return {rectangle(lo_, {xm, hi_.imag()}), rectangle({xm, lo_.imag()}, hi_)};
    if (h > 2.0 * w) return {rectangle(lo_, {hi_.real(), ym}), rectangle({lo_.real(), ym}, hi_)};
    return {rectangle(lo_, {xm, ym}), rectangle({xm, lo_.imag()}, {hi_.real(), ym}),
            rectangle({lo_.real(), ym}, {xm, hi_.imag()}), rectangle({xm, ym}, hi_)};
  }
  if (full_) {
    // Two half annuli, with the cut direction offset by the fraction.
    const double phi = (fraction - 0.5) * 1.0;
    return {annulus_sector(r_in_, r_out_, phi - pi, phi), annulus_sector(r_in_, r_out_, phi, phi + pi)};
  }
  const double dr = r_out_ - r_in_;
  const double arc = 0.5 * (r_in_ + r_out_) * (theta_hi_ - theta_lo_);
  const double rm = r_in_ + fraction * dr;
  const double tm = theta_lo_ + fraction * (theta_hi_ - theta_lo_);
  if (dr > 2.0 * arc) {
    return {annulus_sector(r_in_, rm, theta_lo_, theta_hi_), annulus_sector(rm, r_out_, theta_lo_, theta_hi_)};
  }
  if (arc > 2.0 * dr) {
    return {annulus_sector(r_in_, r_out_, theta_lo_, tm), annulus_sector(r_in_, r_out_, tm, theta_hi_)};
  }
  return {annulus_sector(r_in_, rm, theta_lo_, tm), annulus_sector(r_in_, rm, tm, theta_hi_),
          annulus_sector(rm, r_out_, theta_lo_, tm), annulus_sector(rm, r_out_, tm, theta_hi_)};
}

nlohmann::json Region::to_json() const {
  if (kind_ == Kind::rectangle) {
    return {{"kind", "rectangle"}, {"lo", {lo_.real(), lo_.imag()}}, {"hi", {hi_.real(), hi_.imag()}}};
  }
  nlohmann::json j = {{"kind", "annulus_sector"}, {"r_in", r_in_}, {"r_out", r_out_}, {"full", full_}};
  if (!full_) {
    j["theta_lo"] = theta_lo_;
    j["theta_hi"] = theta_hi_;
  }
  return j;
}

Region Region::from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rectangle") {
      const auto& lo = j.at("lo");
      const auto& hi = j.at("hi");
      return rectangle({lo.at(0).get<double>(), lo.at(1).get<double>()},
                       {hi.at(0).get<double>(), hi.at(1).get<double>()});
    }
    if (kind == "annulus_sector" || kind == "annulus") {
      const double r_in = j.at("r_in").get<double>(), r_out = j.at("r_out").get<double>();
      if (kind == "annulus" || j.value("full", false)) return annulus(r_in, r_out);
      return annulus_sector(r_in, r_out, j.at("theta_lo").get<double>(), j.at("theta_hi").get<double>());
    }
    throw DomainError("unknown region kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed region: ") + e.what());
  }
}

}  // namespace raydist::rootscan
