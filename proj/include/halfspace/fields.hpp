#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "halfspace/core.hpp"
#include "halfspace/grids.hpp"

namespace halfspace {

namespace detail {

inline double weighted_norm(const std::vector<cplx>& v, double weight) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(weight * s);
}

/// Conjugate-linear in the first argument, linear in the second.
inline cplx weighted_inner(const std::vector<cplx>& a, const std::vector<cplx>& b,
                           double weight) {
  if (a.size() != b.size()) throw Error("inner product: size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return weight * s;
}

}  // namespace detail

/// Complex field on the full periodic lattice. Storage is row major with
/// axis 1 slowest; slot order per axis is FFT order 0, 1, ..., 2N-1 where
/// slot s holds signed index s (s < N) or s - 2N (s >= N).
struct LatticeField {
  LatticeGrid grid;
  std::vector<cplx> values;

  LatticeField() = default;
  explicit LatticeField(const LatticeGrid& g) : grid(g), values(g.size()) {}

  std::size_t flat(const int* slots) const {
    std::size_t f = 0;
    for (int j = 0; j < grid.d; ++j)
      f = f * static_cast<std::size_t>(grid.period()) + static_cast<std::size_t>(slots[j]);
    return f;
  }
  cplx& at_slots(std::initializer_list<int> s) { return values[flat(s.begin())]; }
  const cplx& at_slots(std::initializer_list<int> s) const { return values[flat(s.begin())]; }

  /// Access by signed indices n_j in [-N, N).
  cplx& at(std::initializer_list<int> signed_idx) {
    int s[3] = {0, 0, 0};
    int j = 0;
    for (int n : signed_idx) s[j++] = grid.slot(n);
    return values[flat(s)];
  }
  const cplx& at(std::initializer_list<int> signed_idx) const {
    return const_cast<LatticeField*>(this)->at(signed_idx);
  }

  double weight() const { return std::pow(grid.h, grid.d); }
  double norm() const { return detail::weighted_norm(values, weight()); }
};

/// Complex field on a truncated half lattice. Axis-1 index j runs over
/// {1..N-1} (Dirichlet) or {1..N} (Neumann) and is stored as i1 = j - 1
/// (slowest); transverse axes are full-torus slots.
struct HalfLatticeField {
  HalfLatticeGrid grid;
  std::vector<cplx> values;

  HalfLatticeField() = default;
  explicit HalfLatticeField(const HalfLatticeGrid& g) : grid(g), values(g.size()) {}

  std::size_t flat(int i1, const int* tslots) const {
    std::size_t f = static_cast<std::size_t>(i1);
    for (int j = 1; j < grid.parent.d; ++j)
      f = f * static_cast<std::size_t>(grid.parent.period()) +
          static_cast<std::size_t>(tslots[j - 1]);
    return f;
  }
  /// Access by axis-1 index j >= 1 and transverse signed indices.
  cplx& at(int j, std::initializer_list<int> transverse = {}) {
    int ts[2] = {0, 0};
    int k = 0;
    for (int n : transverse) ts[k++] = grid.parent.slot(n);
    return values[flat(j - 1, ts)];
  }
  const cplx& at(int j, std::initializer_list<int> transverse = {}) const {
    return const_cast<HalfLatticeField*>(this)->at(j, transverse);
  }

  double weight() const { return std::pow(grid.parent.h, grid.parent.d); }
  double norm() const { return detail::weighted_norm(values, weight()); }
};

/// Complex samples on the full reference grid (desk-scale continuum).
struct ContinuumField {
  ReferenceGrid grid;
  std::vector<cplx> values;

  ContinuumField() = default;
  explicit ContinuumField(const ReferenceGrid& g) : grid(g), values(g.size()) {}

  std::size_t flat(const int* slots) const {
    std::size_t f = 0;
    for (int j = 0; j < grid.d; ++j)
      f = f * static_cast<std::size_t>(grid.M) + static_cast<std::size_t>(slots[j]);
    return f;
  }
  cplx& at_slots(std::initializer_list<int> s) { return values[flat(s.begin())]; }
  const cplx& at_slots(std::initializer_list<int> s) const { return values[flat(s.begin())]; }
  cplx& at(std::initializer_list<int> signed_idx) {
    int s[3] = {0, 0, 0};
    int j = 0;
    for (int p : signed_idx) s[j++] = grid.slot(p);
    return values[flat(s)];
  }
  const cplx& at(std::initializer_list<int> signed_idx) const {
    return const_cast<ContinuumField*>(this)->at(signed_idx);
  }

  double weight() const { return std::pow(grid.spacing(), grid.d); }
  double norm() const { return detail::weighted_norm(values, weight()); }
};

/// Samples with x1 <= 0 absent: axis-1 planes p1 in {1..M/2-1}, stored as
/// i1 = p1 - 1 (slowest); transverse axes full.
struct HalfContinuumField {
  ReferenceGrid grid;
  std::vector<cplx> values;

  HalfContinuumField() = default;
  explicit HalfContinuumField(const ReferenceGrid& g) : grid(g) {
    std::size_t s = static_cast<std::size_t>(g.half_axis1_count());
    for (int j = 1; j < g.d; ++j) s *= static_cast<std::size_t>(g.M);
    values.resize(s);
  }

  std::size_t flat(int i1, const int* tslots) const {
    std::size_t f = static_cast<std::size_t>(i1);
    for (int j = 1; j < grid.d; ++j)
      f = f * static_cast<std::size_t>(grid.M) + static_cast<std::size_t>(tslots[j - 1]);
    return f;
  }
  cplx& at(int p1, std::initializer_list<int> transverse = {}) {
    int ts[2] = {0, 0};
    int k = 0;
    for (int p : transverse) ts[k++] = grid.slot(p);
    return values[flat(p1 - 1, ts)];
  }
  const cplx& at(int p1, std::initializer_list<int> transverse = {}) const {
    return const_cast<HalfContinuumField*>(this)->at(p1, transverse);
  }

  double weight() const { return std::pow(grid.spacing(), grid.d); }
  double norm() const { return detail::weighted_norm(values, weight()); }
};

template <class Field>
cplx inner(const Field& a, const Field& b) {
  return detail::weighted_inner(a.values, b.values, a.weight());
}

template <class Field>
Field& axpy(Field& y, cplx alpha, const Field& x) {
  if (y.values.size() != x.values.size()) throw Error("axpy: size mismatch");
  for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += alpha * x.values[i];
  return y;
}

template <class Field>
Field& scale(Field& y, cplx alpha) {
  for (cplx& v : y.values) v *= alpha;
  return y;
}

template <class Field>
Field linear_combination(cplx a, const Field& x, cplx b, const Field& y) {
  Field out = x;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = a * x.values[i] + b * y.values[i];
  return out;
}

template <class Field>
double distance(const Field& a, const Field& b) {
  if (a.values.size() != b.values.size()) throw Error("distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(a.weight() * s);
}

/// Sample a function of x = (x_1, ..., x_d) on the full reference grid.
inline ContinuumField sample_continuum(const ReferenceGrid& g,
                                       const std::function<cplx(const double*)>& f) {
  ContinuumField out(g);
  const double hf = g.spacing();
  int s[3] = {0, 0, 0};
  std::size_t idx = 0;
  std::function<void(int)> rec = [&](int axis) {
    if (axis == g.d) {
      double x[3];
      for (int j = 0; j < g.d; ++j) x[j] = g.signed_index(s[j]) * hf;
      out.values[idx++] = f(x);
      return;
    }
    for (s[axis] = 0; s[axis] < g.M; ++s[axis]) rec(axis + 1);
  };
  rec(0);
  return out;
}

/// Sample a function on the open half space portion of the reference grid.
inline HalfContinuumField sample_half_continuum(
    const ReferenceGrid& g, const std::function<cplx(const double*)>& f) {
  HalfContinuumField out(g);
  const double hf = g.spacing();
  std::size_t idx = 0;
  int ts[2] = {0, 0};
  for (int p1 = 1; p1 <= g.half_axis1_count(); ++p1) {
    std::function<void(int)> rec = [&](int axis) {
      if (axis == g.d) {
        double x[3];
        x[0] = p1 * hf;
        for (int j = 1; j < g.d; ++j) x[j] = g.signed_index(ts[j - 1]) * hf;
        out.values[idx++] = f(x);
        return;
      }
      for (ts[axis - 1] = 0; ts[axis - 1] < g.M; ++ts[axis - 1]) rec(axis + 1);
    };
    rec(1);
  }
  return out;
}

}  // namespace halfspace
