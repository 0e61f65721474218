#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfspace {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A field was paired with an operator or plan built for a different grid.
class GridMismatchError : public Error {
 public:
  explicit GridMismatchError(const std::string& what) : Error(what) {}
};

/// Spectral parameter too close to (or inside) the admissible spectrum.
class SpectralProximityError : public Error {
 public:
  explicit SpectralProximityError(const std::string& what) : Error(what) {}
};

/// An iterative solve did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residual_history)
      : Error(what), residuals(std::move(residual_history)) {}
  std::vector<double> residuals;
};

/// A numerical validation (certification) failed; lists offending samples.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<double> offending)
      : Error(what), samples(std::move(offending)) {}
  std::vector<double> samples;
};

/// splitmix64 step; used to derive independent per-cell RNG seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace halfspace
