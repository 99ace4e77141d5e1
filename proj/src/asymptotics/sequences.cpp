#include "raydist/asymptotics/sequences.hpp"

#include <algorithm>

#include "raydist/rng.hpp"

namespace raydist::asymptotics {

namespace {

template <class T>
Average<T> cesaro(std::span<const T> seq) {
  if (seq.size() < 100) throw DomainError("average needs a prefix of length >= 100");
  const std::size_t n = seq.size();
  const std::size_t tail_from = n - n / 10;
  T sum{};
  std::vector<T> partial;
  partial.reserve(n - tail_from + 1);
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_finite(cplx(seq[k]))) throw DomainError("average: non-finite term");
    sum += seq[k];
    if (k + 1 >= tail_from) partial.push_back(sum / static_cast<double>(k + 1));
  }
  Average<T> out;
  out.value = sum / static_cast<double>(n);
  for (const T& m : partial) out.tail = std::max(out.tail, std::abs(m - out.value));
  return out;
}

// Angle reduced to [0, 2 pi).
inline double reduce(double a) {
  constexpr double two_pi = 2.0 * pi;
  return a - two_pi * std::floor(a / two_pi);
}

// Arc length through 1 and the points at angles t1, t2.
double three_point_arc(double t1, double t2) {
  double a[3] = {0.0, t1, t2};  // any representatives mod 2 pi
  std::sort(a, a + 3);
  const double gap = std::max({a[1] - a[0], a[2] - a[1], 2.0 * pi - (a[2] - a[0])});
  return 2.0 * pi - gap;
}

}  // namespace

Average<cplx> average(std::span<const cplx> seq) { return cesaro(seq); }
Average<double> average(std::span<const double> seq) { return cesaro(seq); }

Arc minimal_arc(std::span<const cplx> points) {
  if (points.empty()) throw DomainError("minimal_arc needs at least one point");
  std::vector<double> args;
  args.reserve(points.size());
  for (cplx p : points) {
    if (!is_finite(p) || std::abs(std::abs(p) - 1.0) > 1e-9) {
      throw DomainError("minimal_arc: points must lie on the unit circle");
    }
    args.push_back(std::arg(p));
  }
  std::sort(args.begin(), args.end());
  // The arc is the complement of the largest gap between cyclic neighbours.
  double gap = 2.0 * pi - (args.back() - args.front());
  std::size_t after = 0;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] - args[i - 1] > gap) {
      gap = args[i] - args[i - 1];
      after = i;
    }
  }
  Arc arc;
  arc.length = std::max(0.0, 2.0 * pi - gap);
  arc.start = wrap_angle(args[after]);
  arc.end = wrap_angle(arc.start + arc.length);
  return arc;
}

Lemma4Result lemma4_check(cplx a, cplx b) {
  if (!((a + b).real() > 0.0)) throw DomainError("lemma4_check needs Re(A + B) > 0");
  const cplx pts[3] = {1.0, a, b};
  Lemma4Result out;
  out.arc_len = minimal_arc(pts).length;
  out.bound = std::acos(std::clamp((a + b).real() - 1.0, -1.0, 1.0));
  out.holds = out.arc_len <= out.bound + 1e-12;
  out.sharp_bound = 2.0 * std::acos(std::clamp(0.5 * (a + b).real(), -1.0, 1.0));
  out.holds_sharp = out.arc_len <= out.sharp_bound + 1e-12;
  return out;
}

Limsup windowed_limsup(std::span<const double> seq) {
  const std::size_t half = seq.size() / 2;
  const std::size_t len = seq.size() - half;
  if (len < 10) throw DomainError("windowed_limsup needs at least 20 terms");
  Limsup out;
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t w = 10; w-- > 0;) {
    const std::size_t lo = half + w * len / 10, hi = half + (w + 1) * len / 10;
    running = std::max(running, *std::max_element(seq.begin() + static_cast<std::ptrdiff_t>(lo),
                                                  seq.begin() + static_cast<std::ptrdiff_t>(hi)));
    out.tail_sups[w] = running;
  }
  out.value = out.tail_sups[0];
  return out;
}

Lemma5Result lemma5_check(std::span<const double> seq) {
  if (seq.size() < 10000) throw DomainError("lemma5_check needs a prefix of length >= 10^4");
  const Average<double> mean = average(seq);
  if (std::abs(mean.value) > 1e-2) throw DomainError("lemma5_check: the mean is not within 1e-2 of 0");
  std::vector<double> squares(seq.size()), magnitudes(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    squares[k] = seq[k] * seq[k];
    magnitudes[k] = std::abs(seq[k]);
  }
  const Average<double> sq = average(std::span<const double>(squares));
  Lemma5Result out;
  out.lhs = windowed_limsup(seq).value * windowed_limsup(magnitudes).value;
  out.rhs = sq.value;
  out.tail = sq.tail;
  out.holds = out.lhs >= out.rhs - 3.0 * out.tail;
  return out;
}

UnitTuple UnitTuple::make(double alpha, double beta, double phi, double psi) {
  for (double v : {alpha, beta, phi, psi})
    if (!std::isfinite(v)) throw DomainError("UnitTuple: non-finite angle");
  UnitTuple t{wrap_angle(alpha), wrap_angle(beta), wrap_angle(phi), wrap_angle(psi)};
  if (t.phi == 0.0 || t.psi == 0.0 || t.phi == t.psi) {
    throw DomainError("UnitTuple: 1, p and q must be distinct");
  }
  return t;
}

UnitTuple UnitTuple::random(std::uint64_t seed, std::uint64_t index, double separation) {
  CounterRng rng(seed, index);
  auto angle = [&] { return pi * (1.0 - 2.0 * rng.uniform()); };
  for (;;) {
    const double alpha = angle(), beta = angle(), phi = angle(), psi = angle();
    if (std::abs(phi) < separation || std::abs(psi) < separation ||
        std::abs(wrap_angle(phi - psi)) < separation || phi == 0.0 || psi == 0.0 || phi == psi) {
      continue;
    }
    return make(alpha, beta, phi, psi);
  }
}

std::vector<double> tuple_sequence(const UnitTuple& t, std::size_t length) {
  std::vector<double> x(length);
  for (std::size_t k = 0; k < length; ++k) {
    const double n = static_cast<double>(k + 1);
    x[k] = std::cos(t.alpha + std::fmod(n * t.phi, 2.0 * pi)) + std::cos(t.beta + std::fmod(n * t.psi, 2.0 * pi));
  }
  return x;
}

SectorSearchResult sector_search(const UnitTuple& t, long n_max) {
  if (n_max < 1) throw DomainError("sector_search needs n_max >= 1");
  SectorSearchResult best{0, std::numeric_limits<double>::infinity()};
  for (long n = 1; n <= n_max; ++n) {
    const double x = static_cast<double>(n);
    const double t1 = reduce(t.alpha + x * t.phi);
    const double t2 = reduce(t.beta + x * t.psi);
    const double d = three_point_arc(t1, t2);
    if (d < best.delta) best = {n, d};
  }
  return best;
}

std::vector<SectorSearchResult> sector_sweep(std::span<const UnitTuple> tuples, long n_max, Exec exec) {
  std::vector<SectorSearchResult> out(tuples.size());
  for_each_index(exec, tuples.size(), [&](std::size_t i) { out[i] = sector_search(tuples[i], n_max); });
  return out;
}

}  // namespace raydist::asymptotics
