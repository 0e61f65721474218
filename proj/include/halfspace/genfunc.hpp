#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "halfspace/core.hpp"

namespace halfspace {

namespace detail {

// 16-point Gauss-Legendre rule on [-1, 1].
inline constexpr double kGL16Nodes[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
inline constexpr double kGL16Weights[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

/// Integrate f over [a, b] with composite 16-point Gauss-Legendre panels,
/// subdividing until each panel spans at most ~3 radians of the oscillation
/// frequency `osc`.
inline double integrate_oscillatory(const std::function<double(double)>& f, double a,
                                    double b, double osc) {
  const double len = b - a;
  const int panels = std::max(1, static_cast<int>(std::ceil(len * std::max(1.0, osc) / 3.0)));
  const double pl = len / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * pl;
    const double mid = lo + 0.5 * pl;
    double s = 0.0;
    for (int i = 0; i < 16; ++i) s += kGL16Weights[i] * f(mid + 0.5 * pl * kGL16Nodes[i]);
    total += 0.5 * pl * s;
  }
  return total;
}

/// Ordinary least squares slope/intercept of y against x.
inline void ols(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                double& intercept, double& r2) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  slope = (n * sxy - sx * sy) / den;
  intercept = (sy - slope * sx) / n;
  double ss_res = 0.0;
  const double ybar = sy / n;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = slope * x[i] + intercept;
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

}  // namespace detail

/// A generating function with orthonormal integer translates, reflection
/// even, given through its per-axis Fourier window b:
///   phi0_hat(xi) = (2 pi)^{-d/2} prod_j b(xi_j),
/// with unit periodization sum_k b(t + 2 pi k)^2 = 1.
struct GeneratingFunction {
  std::string name;
  std::function<double(double)> window;       // per-axis b(t), even, real
  std::function<double(double)> spatial_axis; // per-axis phi0 factor
  double support_radius = 0.0;                // per-axis: b(t) = 0 for |t| > r
  double c0_axis = 0.0;                       // min of b on [-pi/2, pi/2]
  double decay_exponent = 0.0;                // claimed tau
  bool reflection_even = true;

  double fourier(const double* xi, int d) const {
    double v = std::pow(2.0 * pi, -0.5 * d);
    for (int j = 0; j < d; ++j) v *= window(xi[j]);
    return v;
  }
  double c0(int d) const {
    return std::pow(2.0 * pi, -0.5 * d) * std::pow(c0_axis, d);
  }
  /// The potential theorem needs spatial decay tau > d.
  bool meets_decay_assumption(int d) const { return decay_exponent > static_cast<double>(d); }
};

/// Inverse Fourier transform of a per-axis window:
/// phi0(x) = (1/pi) int_0^r b(t) cos(x t) dt.
inline double spatial_from_window(const std::function<double(double)>& window, double r,
                                  double x) {
  auto f = [&](double t) { return window(t) * std::cos(x * t); };
  return detail::integrate_oscillatory(f, 0.0, r, std::abs(x)) / pi;
}

/// Build a generating function from a per-axis window with custom metadata.
inline GeneratingFunction make_custom(std::string name, std::function<double(double)> window,
                                      double support_radius, double c0_axis, double tau) {
  GeneratingFunction g;
  g.name = std::move(name);
  g.window = window;
  g.support_radius = support_radius;
  g.c0_axis = c0_axis;
  g.decay_exponent = tau;
  g.spatial_axis = [window, support_radius](double x) {
    return spatial_from_window(window, support_radius, x);
  };
  return g;
}

/// Shannon generating function: indicator window on [-pi, pi] with
/// half-energy value 1/sqrt(2) on the edge (keeps the window even and the
/// periodization identity exact at the edge), phi0 = product of sinc.
inline GeneratingFunction make_shannon() {
  auto window = [](double t) {
    const double a = std::abs(t);
    if (a < pi * (1.0 - 1e-12)) return 1.0;
    if (a <= pi * (1.0 + 1e-12)) return 1.0 / std::sqrt(2.0);
    return 0.0;
  };
  GeneratingFunction g;
  g.name = "shannon";
  g.window = window;
  g.support_radius = pi;
  g.c0_axis = 1.0;
  g.decay_exponent = 1.0; // too slow for the potential theorem in any d
  g.spatial_axis = [](double x) {
    if (x == 0.0) return 1.0;
    return std::sin(pi * x) / (pi * x);
  };
  return g;
}

/// Degree-7 polynomial transition profile, nu(0) = 0, nu(1) = 1,
/// nu(t) + nu(1-t) = 1, C^3 at both ends.
inline double meyer_profile(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

/// Meyer generating function: smooth window, flat on [-2pi/3, 2pi/3],
/// supported in [-4pi/3, 4pi/3], overlapping squares summing to one.
inline GeneratingFunction make_meyer() {
  auto window = [](double t) {
    const double a = std::abs(t);
    if (a <= 2.0 * pi / 3.0) return 1.0;
    if (a >= 4.0 * pi / 3.0) return 0.0;
    return std::cos(0.5 * pi * meyer_profile(3.0 * a / (2.0 * pi) - 1.0));
  };
  return make_custom("meyer", window, 4.0 * pi / 3.0, 1.0, 4.0);
}

inline GeneratingFunction make_genfunc(const std::string& name) {
  if (name == "shannon") return make_shannon();
  if (name == "meyer") return make_meyer();
  throw Error("unknown generating function: " + name);
}

/// Max deviation of the periodization sum from (2 pi)^{-d} over a
/// grid_points^d sample of [-pi, pi]^d. The lattice sum is truncated to
/// |k_j| <= 2, which is exact for support radius <= 3 pi / 2.
inline double validate_orthonormality(const GeneratingFunction& g, int d, int grid_points) {
  if (grid_points < 3) throw Error("validate_orthonormality: need at least 3 grid points");
  std::vector<double> axis_sum(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    const double t = -pi + 2.0 * pi * i / (grid_points - 1);
    double s = 0.0;
    for (int k = -2; k <= 2; ++k) {
      const double b = g.window(t + 2.0 * pi * k);
      s += b * b;
    }
    axis_sum[i] = s;
  }
  const double target = std::pow(2.0 * pi, -static_cast<double>(d));
  double dev = 0.0;
  std::vector<int> idx(d, 0);
  while (true) {
    double prod = 1.0;
    for (int j = 0; j < d; ++j) prod *= axis_sum[idx[j]];
    dev = std::max(dev, std::abs(prod * target - target));
    int j = 0;
    while (j < d && ++idx[j] == grid_points) idx[j++] = 0;
    if (j == d) break;
  }
  return dev;
}

struct SupportBoundReport {
  bool ok = false;
  double c0_measured = 0.0;
  std::vector<double> offending; // sample points violating support or bound
};

/// Check supp(phi0_hat) within [-r, r] per axis and the lower bound on
/// [-pi/2, pi/2]^d; returns the measured c0.
inline SupportBoundReport validate_support_and_lower_bound(const GeneratingFunction& g, int d,
                                                           int samples = 1001) {
  SupportBoundReport rep;
  rep.ok = true;
  // support: sample between r and 3 pi / 2 (plus margin) per axis
  const double upper = 1.5 * pi * 1.25;
  for (int i = 0; i <= samples; ++i) {
    const double t = g.support_radius * (1.0 + 1e-9) +
                     (upper - g.support_radius) * i / static_cast<double>(samples);
    if (std::abs(g.window(t)) > 0.0 || std::abs(g.window(-t)) > 0.0) {
      rep.ok = false;
      rep.offending.push_back(t);
      if (rep.offending.size() >= 16) break;
    }
  }
  double min_b = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double t = -0.5 * pi + pi * i / (samples - 1);
    min_b = std::min(min_b, std::abs(g.window(t)));
  }
  rep.c0_measured = std::pow(2.0 * pi, -0.5 * d) * std::pow(min_b, d);
  if (!(rep.c0_measured > 0.0)) rep.ok = false;
  return rep;
}

/// Estimate the spatial decay exponent tau from the envelope of |phi0| on
/// |x| in [1, 100]: bin |phi0| samples into logarithmic bins, fit the bin
/// maxima in log-log coordinates, return minus the slope.
inline double estimate_decay(const GeneratingFunction& g, int sample_count = 600,
                             int bins = 24) {
  const double x_lo = 1.0, x_hi = 100.0;
  std::vector<double> bin_max(bins, 0.0);
  std::vector<double> bin_x(bins, 0.0);
  for (int i = 0; i < sample_count; ++i) {
    const double x = x_lo * std::pow(x_hi / x_lo, (i + 0.5) / sample_count);
    const double v = std::abs(g.spatial_axis(x));
    const int b = std::min(bins - 1, static_cast<int>(bins * std::log(x / x_lo) /
                                                      std::log(x_hi / x_lo)));
    if (v > bin_max[b]) {
      bin_max[b] = v;
      bin_x[b] = x;
    }
  }
  std::vector<double> lx, ly;
  for (int b = 0; b < bins; ++b) {
    if (bin_max[b] > 0.0) {
      lx.push_back(std::log(bin_x[b]));
      ly.push_back(std::log(bin_max[b]));
    }
  }
  if (lx.size() < 3) throw Error("estimate_decay: too few usable envelope samples");
  double slope, intercept, r2;
  detail::ols(lx, ly, slope, intercept, r2);
  return -slope;
}

}  // namespace halfspace
