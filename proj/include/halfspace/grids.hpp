#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "halfspace/core.hpp"

namespace halfspace {

/// Which truncated half grid a field or operator lives on.
enum class BoundaryKind { dirichlet, neumann };

inline const char* to_string(BoundaryKind k) {
  return k == BoundaryKind::dirichlet ? "dirichlet" : "neumann";
}

/// Periodic lattice of mesh size h: per-axis index range {-N, ..., N-1},
/// period 2N. Axis 1 is the distinguished (reflection) axis.
struct LatticeGrid {
  int d = 1;      // dimension, 1..3
  double h = 1.0; // mesh size
  int N = 2;      // per-axis half extent

  LatticeGrid() = default;
  LatticeGrid(int d_, double h_, int N_) : d(d_), h(h_), N(N_) {
    if (d < 1 || d > 3) throw Error("LatticeGrid: d must be 1, 2 or 3");
    if (!(h > 0.0)) throw Error("LatticeGrid: h must be positive");
    if (N < 2) throw Error("LatticeGrid: N must be at least 2");
  }

  int period() const { return 2 * N; }
  std::size_t size() const {
    std::size_t s = 1;
    for (int j = 0; j < d; ++j) s *= static_cast<std::size_t>(period());
    return s;
  }
  /// Half side length of the box covered by the lattice.
  double box_half_length() const { return N * h; }

  /// Array slot for a signed index n in [-N, N).
  int slot(int n) const { return n >= 0 ? n : n + period(); }
  /// Signed index in [-N, N) for an array slot.
  int signed_index(int slot_) const { return slot_ < N ? slot_ : slot_ - period(); }

  bool operator==(const LatticeGrid& o) const {
    return d == o.d && h == o.h && N == o.N;
  }
};

/// Truncated half lattice: axis-1 range {1, ..., N-1} (Dirichlet) or
/// {1, ..., N} (Neumann); transverse axes as the parent torus.
struct HalfLatticeGrid {
  LatticeGrid parent;
  BoundaryKind kind = BoundaryKind::dirichlet;

  HalfLatticeGrid() = default;
  HalfLatticeGrid(LatticeGrid parent_, BoundaryKind kind_)
      : parent(parent_), kind(kind_) {
    if (axis1_count() < 1) throw Error("HalfLatticeGrid: empty axis-1 range");
  }

  int axis1_count() const {
    return kind == BoundaryKind::dirichlet ? parent.N - 1 : parent.N;
  }
  /// Smallest axis-1 index is always 1.
  int axis1_index(int i) const { return i + 1; }

  /// Torus slot carrying the axis-1 index j in {1..N}. Index j = N (Neumann
  /// only) lives at the alias slot -N of the period-2N torus.
  int parent_slot_for_axis1(int j) const {
    return j <= parent.N - 1 ? j : parent.N; // slot(+N) == slot(-N) == N
  }

  std::size_t size() const {
    std::size_t s = static_cast<std::size_t>(axis1_count());
    for (int j = 1; j < parent.d; ++j)
      s *= static_cast<std::size_t>(parent.period());
    return s;
  }

  bool operator==(const HalfLatticeGrid& o) const {
    return parent == o.parent && kind == o.kind;
  }
};

/// Fine periodic reference grid on [-L, L)^d standing in for the continuum.
/// Spacing h_f = 2L/M. Axis 1 is the reflection axis; the plane x1 = 0 lies
/// on grid points.
struct ReferenceGrid {
  int d = 1;
  double L = 1.0; // half side length
  int M = 4;      // samples per axis, even

  ReferenceGrid() = default;
  ReferenceGrid(int d_, double L_, int M_) : d(d_), L(L_), M(M_) {
    if (d < 1 || d > 3) throw Error("ReferenceGrid: d must be 1, 2 or 3");
    if (!(L > 0.0)) throw Error("ReferenceGrid: L must be positive");
    if (M < 4 || M % 2 != 0) throw Error("ReferenceGrid: M must be even and >= 4");
  }

  double spacing() const { return 2.0 * L / M; }
  std::size_t size() const {
    std::size_t s = 1;
    for (int j = 0; j < d; ++j) s *= static_cast<std::size_t>(M);
    return s;
  }
  /// Number of axis-1 planes strictly inside the half space x1 > 0.
  int half_axis1_count() const { return M / 2 - 1; }

  int slot(int p) const { return p >= 0 ? p : p + M; }
  int signed_index(int slot_) const { return slot_ < M / 2 ? slot_ : slot_ - M; }
  /// Fundamental frequency pi/L; mode m carries frequency m*pi/L.
  double mode_frequency(int m) const { return pi * m / L; }

  /// True if the grid resolves the embedding band [-3pi/(2h), 3pi/(2h)]^d for
  /// lattice mesh h, i.e. h_f <= (2/3) h.
  bool serves_mesh(double h) const { return spacing() <= (2.0 / 3.0) * h + 1e-15 * h; }

  bool operator==(const ReferenceGrid& o) const {
    return d == o.d && L == o.L && M == o.M;
  }
};

/// Reference grid paired with a lattice: same box (L = N h) and oversampled
/// enough for the embedding band.
inline ReferenceGrid make_reference_for(const LatticeGrid& g, int M) {
  ReferenceGrid r(g.d, g.box_half_length(), M);
  if (!r.serves_mesh(g.h))
    throw Error("make_reference_for: M = " + std::to_string(M) +
                " violates the oversampling rule h_f <= (2/3) h");
  return r;
}

/// Smallest even 2^a 3^b 5^c >= n (FFT-friendly sizes).
inline int next_fast_even(int n) {
  auto smooth = [](int v) {
    for (int p : {2, 3, 5})
      while (v % p == 0) v /= p;
    return v == 1;
  };
  if (n < 4) n = 4;
  while (!(n % 2 == 0 && smooth(n))) ++n;
  return n;
}

}  // namespace halfspace
