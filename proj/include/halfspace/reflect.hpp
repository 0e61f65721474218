#pragma once

#include <cstddef>

#include "halfspace/fields.hpp"

namespace halfspace {

/// Discrete even-extension conventions across the reflection axis.
///   paper_literal: value u(1,n') at n1 = 0, u(-n1,n') for n1 <= -1
///                  (reflection through the plane n1 = 0 plus a copied slice).
///   half_plane:    u(1-n1,n') for n1 <= 0 (reflection through n1 = 1/2).
enum class EvenVariant { half_plane, paper_literal };

inline const char* to_string(EvenVariant v) {
  return v == EvenVariant::half_plane ? "half-plane" : "paper-literal";
}

namespace detail {

/// Transverse block size (product of sizes of axes 2..d).
inline std::size_t transverse_size(int d, int per_axis) {
  std::size_t t = 1;
  for (int j = 1; j < d; ++j) t *= static_cast<std::size_t>(per_axis);
  return t;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lattice extensions and restriction
// ---------------------------------------------------------------------------

/// Reflection-odd extension of a Dirichlet half field onto the torus:
/// 0 on the planes n1 = 0 and n1 = -N, antisymmetric under n1 -> -n1.
inline LatticeField odd_extend(const HalfLatticeField& u) {
  if (u.grid.kind != BoundaryKind::dirichlet)
    throw GridMismatchError("odd_extend: input must live on the Dirichlet half grid");
  const LatticeGrid& g = u.grid.parent;
  const int P = g.period();
  const std::size_t T = detail::transverse_size(g.d, P);
  LatticeField v(g);
  for (int j = 1; j <= g.N - 1; ++j) {
    const cplx* src = &u.values[(j - 1) * T];
    cplx* up = &v.values[static_cast<std::size_t>(g.slot(j)) * T];
    cplx* dn = &v.values[static_cast<std::size_t>(g.slot(-j)) * T];
    for (std::size_t t = 0; t < T; ++t) {
      up[t] = src[t];
      dn[t] = -src[t];
    }
  }
  // planes n1 = 0 and n1 = -N stay zero
  return v;
}

/// Reflection-even extension of a Neumann half field onto the torus.
inline LatticeField even_extend(const HalfLatticeField& u, EvenVariant variant) {
  if (u.grid.kind != BoundaryKind::neumann)
    throw GridMismatchError("even_extend: input must live on the Neumann half grid");
  const LatticeGrid& g = u.grid.parent;
  const int P = g.period();
  const std::size_t T = detail::transverse_size(g.d, P);
  LatticeField v(g);
  auto src_plane = [&](int j) { return &u.values[(j - 1) * T]; };
  for (int s1 = 0; s1 < P; ++s1) {
    const int n1 = g.signed_index(s1);
    int j;
    if (n1 >= 1) {
      j = n1;
    } else if (n1 == -g.N) {
      j = g.N; // alias slot of the axis-1 index N
    } else if (variant == EvenVariant::half_plane) {
      j = 1 - n1; // reflection through n1 = 1/2
    } else {
      j = (n1 == 0) ? 1 : -n1; // copied slice at n1 = 0, reflection through 0
    }
    const cplx* src = src_plane(j);
    cplx* dst = &v.values[static_cast<std::size_t>(s1) * T];
    for (std::size_t t = 0; t < T; ++t) dst[t] = src[t];
  }
  return v;
}

/// Keep the axis-1 planes of the requested half grid.
inline HalfLatticeField restrict_lattice(const LatticeField& v, BoundaryKind kind) {
  const LatticeGrid& g = v.grid;
  HalfLatticeField u(HalfLatticeGrid(g, kind));
  const std::size_t T = detail::transverse_size(g.d, g.period());
  const int count = u.grid.axis1_count();
  for (int j = 1; j <= count; ++j) {
    const int s1 = u.grid.parent_slot_for_axis1(j);
    const cplx* src = &v.values[static_cast<std::size_t>(s1) * T];
    cplx* dst = &u.values[(j - 1) * T];
    for (std::size_t t = 0; t < T; ++t) dst[t] = src[t];
  }
  return u;
}

/// Adjoint of odd_extend with respect to the h^d-weighted inner products:
/// (O* v)(j) = v(j) - v(-j).
inline HalfLatticeField odd_extend_adjoint(const LatticeField& v) {
  const LatticeGrid& g = v.grid;
  HalfLatticeField u(HalfLatticeGrid(g, BoundaryKind::dirichlet));
  const std::size_t T = detail::transverse_size(g.d, g.period());
  for (int j = 1; j <= g.N - 1; ++j) {
    const cplx* up = &v.values[static_cast<std::size_t>(g.slot(j)) * T];
    const cplx* dn = &v.values[static_cast<std::size_t>(g.slot(-j)) * T];
    cplx* dst = &u.values[(j - 1) * T];
    for (std::size_t t = 0; t < T; ++t) dst[t] = up[t] - dn[t];
  }
  return u;
}

/// Adjoint of even_extend for the given variant.
inline HalfLatticeField even_extend_adjoint(const LatticeField& v, EvenVariant variant) {
  const LatticeGrid& g = v.grid;
  HalfLatticeField u(HalfLatticeGrid(g, BoundaryKind::neumann));
  const std::size_t T = detail::transverse_size(g.d, g.period());
  auto plane = [&](int s1) { return &v.values[static_cast<std::size_t>(s1) * T]; };
  for (int j = 1; j <= g.N; ++j) {
    cplx* dst = &u.values[(j - 1) * T];
    const cplx* a;
    const cplx* b;
    if (variant == EvenVariant::half_plane) {
      // u(j) appears at slots j and 1-j (with j = N living at -N and 1-N)
      a = plane(j <= g.N - 1 ? g.slot(j) : g.slot(-g.N));
      b = plane(g.slot(1 - j));
    } else {
      a = plane(j <= g.N - 1 ? g.slot(j) : g.slot(-g.N));
      b = (j <= g.N - 1) ? plane(g.slot(-j)) : nullptr;
    }
    for (std::size_t t = 0; t < T; ++t) dst[t] = a[t] + (b ? b[t] : cplx(0.0));
  }
  if (variant == EvenVariant::paper_literal) {
    // the copied slice at n1 = 0 contributes to u(1)
    const cplx* z = plane(0);
    cplx* dst = &u.values[0];
    for (std::size_t t = 0; t < T; ++t) dst[t] += z[t];
    // j = N only appears at the alias slot -N, already handled (b = null)
  }
  return u;
}

/// Adjoint of restrict_lattice: zero extension onto the torus.
inline LatticeField restrict_lattice_adjoint(const HalfLatticeField& u) {
  const LatticeGrid& g = u.grid.parent;
  LatticeField v(g);
  const std::size_t T = detail::transverse_size(g.d, g.period());
  for (int j = 1; j <= u.grid.axis1_count(); ++j) {
    const int s1 = u.grid.parent_slot_for_axis1(j);
    const cplx* src = &u.values[(j - 1) * T];
    cplx* dst = &v.values[static_cast<std::size_t>(s1) * T];
    for (std::size_t t = 0; t < T; ++t) dst[t] = src[t];
  }
  return v;
}

// ---------------------------------------------------------------------------
// Continuum (reference grid) extensions and restriction
// ---------------------------------------------------------------------------

/// Odd extension through the plane x1 = 0; the on-grid planes x1 = 0 and
/// x1 = -L are forced to zero.
inline ContinuumField odd_extend(const HalfContinuumField& f) {
  const ReferenceGrid& g = f.grid;
  const std::size_t T = detail::transverse_size(g.d, g.M);
  ContinuumField v(g);
  for (int p = 1; p <= g.half_axis1_count(); ++p) {
    const cplx* src = &f.values[(p - 1) * T];
    cplx* up = &v.values[static_cast<std::size_t>(g.slot(p)) * T];
    cplx* dn = &v.values[static_cast<std::size_t>(g.slot(-p)) * T];
    for (std::size_t t = 0; t < T; ++t) {
      up[t] = src[t];
      dn[t] = -src[t];
    }
  }
  return v;
}

/// Even extension through x1 = 0. The plane x1 = 0 copies the first interior
/// plane (the limit from x1 > 0); the far plane x1 = -L copies the last
/// interior plane.
inline ContinuumField even_extend(const HalfContinuumField& f) {
  const ReferenceGrid& g = f.grid;
  const std::size_t T = detail::transverse_size(g.d, g.M);
  ContinuumField v(g);
  const int H = g.half_axis1_count();
  auto src_plane = [&](int p) { return &f.values[(p - 1) * T]; };
  for (int s1 = 0; s1 < g.M; ++s1) {
    const int p1 = g.signed_index(s1);
    int p;
    if (p1 >= 1) {
      p = p1;
    } else if (p1 == 0) {
      p = 1;
    } else if (p1 == -g.M / 2) {
      p = H;
    } else {
      p = -p1;
    }
    const cplx* src = src_plane(p);
    cplx* dst = &v.values[static_cast<std::size_t>(s1) * T];
    for (std::size_t t = 0; t < T; ++t) dst[t] = src[t];
  }
  return v;
}

/// Extension by zero onto the full grid.
inline ContinuumField zero_extend(const HalfContinuumField& f) {
  const ReferenceGrid& g = f.grid;
  const std::size_t T = detail::transverse_size(g.d, g.M);
  ContinuumField v(g);
  for (int p = 1; p <= g.half_axis1_count(); ++p) {
    const cplx* src = &f.values[(p - 1) * T];
    cplx* dst = &v.values[static_cast<std::size_t>(g.slot(p)) * T];
    for (std::size_t t = 0; t < T; ++t) dst[t] = src[t];
  }
  return v;
}

/// Keep the samples with x1 > 0.
inline HalfContinuumField restrict_continuum(const ContinuumField& v) {
  const ReferenceGrid& g = v.grid;
  HalfContinuumField f(g);
  const std::size_t T = detail::transverse_size(g.d, g.M);
  for (int p = 1; p <= g.half_axis1_count(); ++p) {
    const cplx* src = &v.values[static_cast<std::size_t>(g.slot(p)) * T];
    cplx* dst = &f.values[(p - 1) * T];
    for (std::size_t t = 0; t < T; ++t) dst[t] = src[t];
  }
  return f;
}

/// (O* v)(p) = v(p) - v(-p).
inline HalfContinuumField odd_extend_adjoint(const ContinuumField& v) {
  const ReferenceGrid& g = v.grid;
  HalfContinuumField f(g);
  const std::size_t T = detail::transverse_size(g.d, g.M);
  for (int p = 1; p <= g.half_axis1_count(); ++p) {
    const cplx* up = &v.values[static_cast<std::size_t>(g.slot(p)) * T];
    const cplx* dn = &v.values[static_cast<std::size_t>(g.slot(-p)) * T];
    cplx* dst = &f.values[(p - 1) * T];
    for (std::size_t t = 0; t < T; ++t) dst[t] = up[t] - dn[t];
  }
  return f;
}

/// Adjoint of even_extend including the two copied-plane contributions.
inline HalfContinuumField even_extend_adjoint(const ContinuumField& v) {
  const ReferenceGrid& g = v.grid;
  HalfContinuumField f(g);
  const std::size_t T = detail::transverse_size(g.d, g.M);
  const int H = g.half_axis1_count();
  for (int p = 1; p <= H; ++p) {
    const cplx* up = &v.values[static_cast<std::size_t>(g.slot(p)) * T];
    const cplx* dn = &v.values[static_cast<std::size_t>(g.slot(-p)) * T];
    cplx* dst = &f.values[(p - 1) * T];
    for (std::size_t t = 0; t < T; ++t) dst[t] = up[t] + dn[t];
  }
  const cplx* plane0 = &v.values[0];
  cplx* first = &f.values[0];
  for (std::size_t t = 0; t < T; ++t) first[t] += plane0[t];
  const cplx* planeL = &v.values[static_cast<std::size_t>(g.slot(-g.M / 2)) * T];
  cplx* last = &f.values[(H - 1) * T];
  for (std::size_t t = 0; t < T; ++t) last[t] += planeL[t];
  return f;
}

/// Adjoint of restrict_continuum: zero extension.
inline ContinuumField restrict_continuum_adjoint(const HalfContinuumField& f) {
  return zero_extend(f);
}

}  // namespace halfspace
