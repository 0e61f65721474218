#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "halfspace/fields.hpp"
#include "halfspace/grids.hpp"
#include "halfspace/reflect.hpp"

namespace halfspace {

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

/// Symbol of the discrete Laplacian: (4/h^2) sum_j sin^2(h xi_j / 2).
inline double lattice_symbol(double h, const double* xi, int d) {
  double s = 0.0;
  for (int j = 0; j < d; ++j) {
    const double t = std::sin(0.5 * h * xi[j]);
    s += t * t;
  }
  return 4.0 / (h * h) * s;
}

/// Symbol of the continuum Laplacian: |xi|^2.
inline double continuum_symbol(const double* xi, int d) {
  double s = 0.0;
  for (int j = 0; j < d; ++j) s += xi[j] * xi[j];
  return s;
}

/// Symbol of Psi(discrete Laplacian): Psi evaluated on the lattice symbol.
inline double psi_lattice_symbol(const std::function<double(double)>& psi, double h,
                                 const double* xi, int d) {
  return psi(lattice_symbol(h, xi, d));
}

/// Eigenvalue of the truncated torus Laplacian at mode k (per-axis indices
/// in [-N, N)): (4/h^2) sum_j sin^2(pi k_j / (2N)).
inline double torus_eigenvalue(const LatticeGrid& g, const int* k) {
  double s = 0.0;
  for (int j = 0; j < g.d; ++j) {
    const double t = std::sin(0.5 * pi * k[j] / g.N);
    s += t * t;
  }
  return 4.0 / (g.h * g.h) * s;
}

/// Axis-1 eigenvalue of the truncated Dirichlet (k = 1..N-1) or Neumann
/// (k = 0..N-1) line operator: (4/h^2) sin^2(pi k / (2N)).
inline double half_line_eigenvalue(const LatticeGrid& g, int k) {
  const double t = std::sin(0.5 * pi * k / g.N);
  return 4.0 / (g.h * g.h) * t * t;
}

// ---------------------------------------------------------------------------
// Stencils
// ---------------------------------------------------------------------------

enum class StencilKind { full, dirichlet, neumann };

inline const char* to_string(StencilKind k) {
  switch (k) {
    case StencilKind::full: return "full";
    case StencilKind::dirichlet: return "dirichlet";
    default: return "neumann";
  }
}

/// Immutable descriptor of a discrete Laplacian.
struct StencilOperator {
  StencilKind kind = StencilKind::full;
  LatticeGrid grid;

  StencilOperator(StencilKind k, LatticeGrid g) : kind(k), grid(g) {}
};

/// Apply the full torus Laplacian.
inline LatticeField apply_stencil(const StencilOperator& op, const LatticeField& v) {
  if (op.kind != StencilKind::full || !(v.grid == op.grid))
    throw GridMismatchError("apply_stencil: full-kind operator needs a matching torus field");
  const LatticeGrid& g = v.grid;
  const int P = g.period();
  const double inv_h2 = 1.0 / (g.h * g.h);
  LatticeField out(g);
  std::vector<std::size_t> stride(g.d);
  stride[g.d - 1] = 1;
  for (int j = g.d - 2; j >= 0; --j) stride[j] = stride[j + 1] * P;
  int s[3] = {0, 0, 0};
  std::function<void(int)> rec = [&](int axis) {
    if (axis == g.d) {
      std::size_t f = 0;
      for (int j = 0; j < g.d; ++j) f += stride[j] * s[j];
      cplx acc = 0.0;
      for (int j = 0; j < g.d; ++j) {
        const int up = (s[j] + 1) % P;
        const int dn = (s[j] + P - 1) % P;
        acc += 2.0 * v.values[f] - v.values[f + (up - s[j]) * stride[j]] -
               v.values[f + (dn - s[j]) * stride[j]];
      }
      out.values[f] = inv_h2 * acc;
      return;
    }
    for (s[axis] = 0; s[axis] < P; ++s[axis]) rec(axis + 1);
  };
  rec(0);
  return out;
}

/// Apply the truncated Dirichlet or Neumann Laplacian on its half grid.
/// Axis-1 boundary rows follow the reflection structure of the torus:
/// Dirichlet has zero ghosts on both walls (n1 = 0 and n1 = N), Neumann has
/// mirror ghosts on both walls (n1 = 0 copies n1 = 1, n1 = N+1 copies n1 = N).
inline HalfLatticeField apply_stencil(const StencilOperator& op, const HalfLatticeField& u) {
  if (op.kind == StencilKind::full)
    throw GridMismatchError("apply_stencil: half field passed to the full-kind operator");
  const BoundaryKind want =
      op.kind == StencilKind::dirichlet ? BoundaryKind::dirichlet : BoundaryKind::neumann;
  if (u.grid.kind != want || !(u.grid.parent == op.grid))
    throw GridMismatchError("apply_stencil: field grid does not match the operator");
  const LatticeGrid& g = u.grid.parent;
  const int P = g.period();
  const int n1 = u.grid.axis1_count();
  const std::size_t T = detail::transverse_size(g.d, P);
  const double inv_h2 = 1.0 / (g.h * g.h);
  const bool neumann = op.kind == StencilKind::neumann;
  HalfLatticeField out(u.grid);

  // axis 1 (tridiagonal with boundary rows)
  for (int i = 0; i < n1; ++i) {
    const cplx* mid = &u.values[static_cast<std::size_t>(i) * T];
    const cplx* up = i + 1 < n1 ? &u.values[static_cast<std::size_t>(i + 1) * T] : nullptr;
    const cplx* dn = i > 0 ? &u.values[static_cast<std::size_t>(i - 1) * T] : nullptr;
    cplx* dst = &out.values[static_cast<std::size_t>(i) * T];
    for (std::size_t t = 0; t < T; ++t) {
      cplx low = dn ? dn[t] : (neumann ? mid[t] : cplx(0.0));
      cplx high = up ? up[t] : (neumann ? mid[t] : cplx(0.0));
      dst[t] = inv_h2 * (2.0 * mid[t] - low - high);
    }
  }

  // transverse axes (periodic)
  if (g.d > 1) {
    std::vector<std::size_t> tstride(g.d - 1);
    tstride[g.d - 2] = 1;
    for (int j = g.d - 3; j >= 0; --j) tstride[j] = tstride[j + 1] * P;
    for (int i = 0; i < n1; ++i) {
      const cplx* src = &u.values[static_cast<std::size_t>(i) * T];
      cplx* dst = &out.values[static_cast<std::size_t>(i) * T];
      int ts[2] = {0, 0};
      std::function<void(int)> rec = [&](int axis) {
        if (axis == g.d - 1) {
          std::size_t f = 0;
          for (int j = 0; j < g.d - 1; ++j) f += tstride[j] * ts[j];
          cplx acc = 0.0;
          for (int j = 0; j < g.d - 1; ++j) {
            const int upj = (ts[j] + 1) % P;
            const int dnj = (ts[j] + P - 1) % P;
            acc += 2.0 * src[f] - src[f + (upj - ts[j]) * tstride[j]] -
                   src[f + (dnj - ts[j]) * tstride[j]];
          }
          dst[f] += inv_h2 * acc;
          return;
        }
        for (ts[axis] = 0; ts[axis] < P; ++ts[axis]) rec(axis + 1);
      };
      rec(0);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Potentials
// ---------------------------------------------------------------------------

/// Real bounded potential on the closed half space, with declared Hoelder
/// data. The evaluator takes x = (x_1, ..., x_d) with x_1 >= 0.
struct PotentialSpec {
  std::string name;
  std::function<double(const double*, int)> evaluate; // (x, d) -> V(x)
  double sup_bound = 1.0;
  double theta = 1.0; // Hoelder order in (0, 1]
  double holder_constant = 1.0;
};

/// V(x) = cos(x1) exp(-|x|^2); smooth, theta = 1.
inline PotentialSpec make_cos_gauss_potential() {
  PotentialSpec p;
  p.name = "cos-gauss";
  p.evaluate = [](const double* x, int d) {
    double r2 = 0.0;
    for (int j = 0; j < d; ++j) r2 += x[j] * x[j];
    return std::cos(x[0]) * std::exp(-r2);
  };
  p.sup_bound = 1.0;
  p.theta = 1.0;
  p.holder_constant = 3.0;
  return p;
}

/// V(x) = |sin(x1)|^{1/2} exp(-|x|^2); Hoelder of order 1/2 at the zeros of sin.
inline PotentialSpec make_sqrt_sin_gauss_potential() {
  PotentialSpec p;
  p.name = "sqrt-sin-gauss";
  p.evaluate = [](const double* x, int d) {
    double r2 = 0.0;
    for (int j = 0; j < d; ++j) r2 += x[j] * x[j];
    return std::sqrt(std::abs(std::sin(x[0]))) * std::exp(-r2);
  };
  p.sup_bound = 1.0;
  p.theta = 0.5;
  p.holder_constant = 3.0;
  return p;
}

inline PotentialSpec make_potential(const std::string& name) {
  if (name == "cos-gauss") return make_cos_gauss_potential();
  if (name == "sqrt-sin-gauss") return make_sqrt_sin_gauss_potential();
  if (name == "none" || name.empty()) {
    PotentialSpec p;
    p.name = "none";
    p.evaluate = [](const double*, int) { return 0.0; };
    p.sup_bound = 0.0;
    return p;
  }
  throw Error("unknown potential: " + name);
}

/// Pointwise samples V_h(n) = V(h n) on a half grid.
struct DiscretePotential {
  HalfLatticeGrid grid;
  std::vector<double> values;
};

inline DiscretePotential sample_potential(const PotentialSpec& spec,
                                          const HalfLatticeGrid& grid) {
  const LatticeGrid& g = grid.parent;
  DiscretePotential out{grid, std::vector<double>(grid.size())};
  std::size_t idx = 0;
  for (int j = 1; j <= grid.axis1_count(); ++j) {
    int ts[2] = {0, 0};
    std::function<void(int)> rec = [&](int axis) {
      if (axis == g.d) {
        double x[3];
        x[0] = g.h * j;
        for (int a = 1; a < g.d; ++a) x[a] = g.h * g.signed_index(ts[a - 1]);
        out.values[idx++] = spec.evaluate(x, g.d);
        return;
      }
      for (ts[axis - 1] = 0; ts[axis - 1] < g.period(); ++ts[axis - 1]) rec(axis + 1);
    };
    rec(1);
  }
  return out;
}

/// Continuum even extension of the potential: (EV)(x) = V(x) for x1 >= 0,
/// V(-x1, x') otherwise.
inline std::function<double(const double*, int)> even_extend_potential(
    const PotentialSpec& spec) {
  auto eval = spec.evaluate;
  return [eval](const double* x, int d) {
    double y[3];
    y[0] = std::abs(x[0]);
    for (int j = 1; j < d; ++j) y[j] = x[j];
    return eval(y, d);
  };
}

/// Real multiplication data for the torus operator H_h = H_{0,h} + E_h V_h,
/// with the lattice even extension matching the chain in use: the
/// paper-literal (through n1 = 0) extension pairs with the odd chain, the
/// half-plane extension with the half-plane even chain.
inline std::vector<double> torus_potential(const PotentialSpec& spec, const LatticeGrid& g,
                                           EvenVariant variant) {
  std::vector<double> out(g.size());
  const std::size_t T = detail::transverse_size(g.d, g.period());
  for (int s1 = 0; s1 < g.period(); ++s1) {
    const int m = g.signed_index(s1);
    int j;
    if (m >= 1) {
      j = m;
    } else if (m == -g.N) {
      j = g.N;
    } else if (variant == EvenVariant::half_plane) {
      j = 1 - m;
    } else {
      j = (m == 0) ? 1 : -m;
    }
    int ts[2] = {0, 0};
    std::size_t t = 0;
    std::function<void(int)> rec = [&](int axis) {
      if (axis == g.d) {
        double x[3];
        x[0] = g.h * j;
        for (int a = 1; a < g.d; ++a) x[a] = g.h * g.signed_index(ts[a - 1]);
        out[static_cast<std::size_t>(s1) * T + t] = spec.evaluate(x, g.d);
        ++t;
        return;
      }
      for (ts[axis - 1] = 0; ts[axis - 1] < g.period(); ++ts[axis - 1]) rec(axis + 1);
    };
    rec(1);
  }
  return out;
}

/// Sampled continuum even extension of V on the reference grid (real values).
inline std::vector<double> reference_potential(const PotentialSpec& spec,
                                               const ReferenceGrid& g) {
  std::vector<double> out(g.size());
  auto ev = even_extend_potential(spec);
  const double hf = g.spacing();
  int s[3] = {0, 0, 0};
  std::size_t idx = 0;
  std::function<void(int)> rec = [&](int axis) {
    if (axis == g.d) {
      double x[3];
      for (int j = 0; j < g.d; ++j) x[j] = g.signed_index(s[j]) * hf;
      out[idx++] = ev(x, g.d);
      return;
    }
    for (s[axis] = 0; s[axis] < g.M; ++s[axis]) rec(axis + 1);
  };
  rec(0);
  return out;
}

/// Empirical sup of |V(x)-V(y)| / |x-y|^theta over random pairs in
/// [0, box] x [-box, box]^{d-1}.
inline double measure_holder_ratio(const PotentialSpec& spec, int d, int pairs,
                                   std::uint64_t seed, double box = 4.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double ratio = 0.0;
  for (int i = 0; i < pairs; ++i) {
    double x[3], y[3];
    x[0] = box * u01(rng);
    y[0] = box * u01(rng);
    for (int j = 1; j < d; ++j) {
      x[j] = box * (2.0 * u01(rng) - 1.0);
      y[j] = box * (2.0 * u01(rng) - 1.0);
    }
    double dist2 = 0.0;
    for (int j = 0; j < d; ++j) dist2 += (x[j] - y[j]) * (x[j] - y[j]);
    const double dist = std::sqrt(dist2);
    if (dist < 1e-12) continue;
    const double dv = std::abs(spec.evaluate(x, d) - spec.evaluate(y, d));
    ratio = std::max(ratio, dv / std::pow(dist, spec.theta));
  }
  return ratio;
}

}  // namespace halfspace
