#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace raydist {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx imag_unit{0.0, 1.0};

inline cplx unit_phase(double theta) { return std::polar(1.0, theta); }

/// Maps an angle to the representative interval (-pi, pi].
inline double wrap_angle(double theta) {
  double t = std::remainder(theta, 2.0 * pi);
  if (t <= -pi) t += 2.0 * pi;
  return t;
}

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Error hierarchy. The CLI maps these onto exit codes: DomainError is a
// configuration/precondition failure, the rest are numerical-quality failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class CriticalPointError : public Error {
 public:
  CriticalPointError(const std::string& what, cplx where) : Error(what), where_(where) {}
  cplx where() const { return where_; }

 private:
  cplx where_;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double parameter) : Error(what), parameter_(parameter) {}
  /// Arclength reached along the path when the integrator gave up.
  double parameter() const { return parameter_; }

 private:
  double parameter_;
};

class ContourError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class QualityError : public Error {
 public:
  using Error::Error;
};

}  // namespace raydist
