#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "raydist/core.hpp"
#include "raydist/exec.hpp"

namespace raydist::asymptotics {

template <class T>
struct Average {
  T value{};
  /// Largest deviation of the partial means over the last 10% of the
  /// prefix from the full mean.
  double tail = 0.0;
};

/// Cesaro mean of a finite prefix (length >= 100).
Average<cplx> average(std::span<const cplx> seq);
Average<double> average(std::span<const double> seq);

struct Arc {
  double length = 0.0;
  double start = 0.0;  ///< argument where the arc begins (counterclockwise)
  double end = 0.0;    ///< wrap_angle(start + length)
};

/// Shortest closed arc of the unit circle containing all points.
Arc minimal_arc(std::span<const cplx> points);

struct Lemma4Result {
  double arc_len = 0.0;
  double bound = 0.0;  ///< arccos(Re(A + B) - 1)
  bool holds = false;
  /// 2 arccos(Re(A + B) / 2), attained by A = conj(B).
  double sharp_bound = 0.0;
  bool holds_sharp = false;
};

/// Arc through 1, A, B against arccos(Re(A + B) - 1); needs Re(A + B) > 0.
/// The stated bound fails for A = e^{it}, B = e^{-it}: the arc is 2t while
/// arccos(2 cos t - 1) < 2t. sharp_bound is the valid replacement.
Lemma4Result lemma4_check(cplx a, cplx b);

struct Lemma5Result {
  double lhs = 0.0;   ///< limsup x * limsup |x| (windowed)
  double rhs = 0.0;   ///< av(x^2)
  double tail = 0.0;  ///< tail estimate of av(x^2)
  bool holds = false;
};

struct Limsup {
  /// sup of the terms in the second half of the prefix.
  double value = 0.0;
  /// Tail sups from the start of each of 10 equal windows of the second
  /// half (nonincreasing; their spread shows how settled the value is).
  std::array<double, 10> tail_sups{};
};

Limsup windowed_limsup(std::span<const double> seq);

/// Needs a prefix of length >= 10^4 whose mean is within 1e-2 of zero.
Lemma5Result lemma5_check(std::span<const double> seq);

/// Arguments of a, b, p, q on the unit circle.
struct UnitTuple {
  double alpha = 0.0, beta = 0.0, phi = 0.0, psi = 0.0;

  /// Wraps the angles and rejects phi == 0, psi == 0 or phi == psi.
  static UnitTuple make(double alpha, double beta, double phi, double psi);
  /// Uniform angles keyed by (seed, index), with |phi|, |psi| and
  /// |phi - psi| (mod 2 pi) at least `separation`.
  static UnitTuple random(std::uint64_t seed, std::uint64_t index, double separation = 0.0);
};

/// x_n = cos(alpha + n phi) + cos(beta + n psi) for n = 1..length.
std::vector<double> tuple_sequence(const UnitTuple& t, std::size_t length);

struct SectorSearchResult {
  long best_n = 0;
  double delta = 0.0;
};

/// Minimizes the arc through 1, a p^n, b q^n over 1 <= n <= n_max (ties go
/// to the smallest n).
SectorSearchResult sector_search(const UnitTuple& t, long n_max);

/// sector_search over many tuples; results are in input order.
std::vector<SectorSearchResult> sector_sweep(std::span<const UnitTuple> tuples, long n_max, Exec exec);

}  // namespace raydist::asymptotics
