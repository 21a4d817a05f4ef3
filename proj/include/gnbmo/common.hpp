#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace gnbmo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// bad user-facing input (domain spec, exponents, resolution, ...); the CLI maps
// this to exit code 2
struct ConfigError : Error {
  using Error::Error;
};
// numerical failure: tolerance not reached, non-finite kernel value, ...
struct NumericError : Error {
  using Error::Error;
};

// point in R^d, d <= 2; y is ignored (and kept 0) in d=1
struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(const Point& a, const Point& b, int dim) {
  const double dx = a.x - b.x;
  if (dim == 1) return dx * dx;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(const Point& a, const Point& b, int dim) {
  return std::sqrt(dist2(a, b, dim));
}

// Lebesgue measure of the d-ball of radius r
inline double ball_volume(int dim, double r) {
  return dim == 1 ? 2.0 * r : std::numbers::pi * r * r;
}

// Neumaier-compensated accumulator; value() folds the compensation back in.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// n log-spaced values from a to b inclusive; endpoints are pinned exactly
inline std::vector<double> log_spaced(double a, double b, int n) {
  if (!(a > 0.0) || !(b >= a) || n < 2)
    throw ConfigError("log_spaced: need 0 < a <= b and n >= 2");
  std::vector<double> r(static_cast<size_t>(n));
  const double la = std::log(a), lb = std::log(b);
  for (int k = 0; k < n; ++k)
    r[static_cast<size_t>(k)] = std::exp(la + (lb - la) * k / (n - 1));
  r.front() = a;
  r.back() = b;
  return r;
}

// all radius sups (kappa, BMO, sharp/maximal) share this grid size
inline constexpr int kRadiusGridN = 32;
// midpoint-lattice node-count cap
inline constexpr int kNodeCap = 200000;

}  // namespace gnbmo
