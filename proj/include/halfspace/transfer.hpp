#pragma once

#include <cmath>
#include <vector>

#include "halfspace/fft.hpp"
#include "halfspace/fields.hpp"
#include "halfspace/genfunc.hpp"
#include "halfspace/reflect.hpp"

namespace halfspace {

/// Which half-space transfer chain to use.
enum class TransferMode { odd, even_paper, even_halfplane };

inline const char* to_string(TransferMode m) {
  switch (m) {
    case TransferMode::odd: return "odd";
    case TransferMode::even_paper: return "even-paper";
    default: return "even-halfplane";
  }
}

inline BoundaryKind boundary_of(TransferMode m) {
  return m == TransferMode::odd ? BoundaryKind::dirichlet : BoundaryKind::neumann;
}

inline EvenVariant even_variant_of(TransferMode m) {
  return m == TransferMode::even_paper ? EvenVariant::paper_literal
                                       : EvenVariant::half_plane;
}

/// Precomputed data tying a lattice, a reference grid and a generating
/// function together. The embedding acts in Fourier space: lattice mode k
/// contributes to the reference modes m = k + 2N t (t integer) with the
/// per-axis window weight b(pi m / N); the oversampling rule puts the whole
/// band |m| <= 3N/2 on the reference spectrum.
struct TransferPlan {
  LatticeGrid lattice;
  ReferenceGrid reference;
  GeneratingFunction genfunc;
  std::vector<double> axis_weight; // indexed by reference slot, b(pi m / N)

  TransferPlan(const LatticeGrid& lat, const ReferenceGrid& ref, GeneratingFunction gen)
      : lattice(lat), reference(ref), genfunc(std::move(gen)) {
    if (lat.d != ref.d) throw GridMismatchError("TransferPlan: dimension mismatch");
    if (!ref.serves_mesh(lat.h))
      throw GridMismatchError("TransferPlan: reference grid violates the oversampling rule");
    if (std::abs(ref.L - lat.box_half_length()) > 1e-12 * ref.L)
      throw GridMismatchError("TransferPlan: reference box must equal the lattice box");
    if (genfunc.support_radius > 1.5 * pi + 1e-12)
      throw Error("TransferPlan: generating function support exceeds [-3pi/2, 3pi/2]");
    axis_weight.resize(ref.M);
    for (int s = 0; s < ref.M; ++s) {
      const int m = ref.signed_index(s);
      axis_weight[s] = genfunc.window(pi * static_cast<double>(m) / lat.N);
    }
  }

  std::vector<int> lattice_dims() const {
    return std::vector<int>(lattice.d, lattice.period());
  }
  std::vector<int> reference_dims() const { return std::vector<int>(reference.d, reference.M); }
};

/// J_h: embed a lattice field as the band-limited function
/// sum_n v(n) phi0((x - hn)/h) sampled on the reference grid. Isometric.
inline ContinuumField embed(const TransferPlan& plan, const LatticeField& v) {
  if (!(v.grid == plan.lattice)) throw GridMismatchError("embed: field/plan mismatch");
  const int d = plan.lattice.d;
  const int P = plan.lattice.period();
  const int M = plan.reference.M;
  const std::vector<cplx> vhat = fft::forward(plan.lattice_dims(), v.values);
  const double inv_pd = 1.0 / std::pow(static_cast<double>(P), d);

  ContinuumField out(plan.reference);
  std::vector<cplx> spectrum(out.values.size());
  int s[3] = {0, 0, 0};
  std::size_t idx = 0;
  std::function<void(int, double, std::size_t)> rec = [&](int axis, double w,
                                                          std::size_t lflat) {
    if (axis == d) {
      spectrum[idx++] = w == 0.0 ? cplx(0.0) : w * inv_pd * vhat[lflat];
      return;
    }
    for (s[axis] = 0; s[axis] < M; ++s[axis]) {
      const double wj = plan.axis_weight[s[axis]];
      const int m = plan.reference.signed_index(s[axis]);
      const int lslot = ((m % P) + P) % P;
      rec(axis + 1, w * wj, lflat * P + lslot);
    }
  };
  rec(0, 1.0, 0);
  out.values = fft::backward(plan.reference_dims(), spectrum);
  return out;
}

/// K_h = (J_h)^*: discretize a reference field. Folds the windowed reference
/// spectrum back onto the lattice Brillouin zone.
inline LatticeField discretize(const TransferPlan& plan, const ContinuumField& f) {
  if (!(f.grid == plan.reference)) throw GridMismatchError("discretize: field/plan mismatch");
  const int d = plan.lattice.d;
  const int P = plan.lattice.period();
  const int M = plan.reference.M;
  std::vector<cplx> chat = fft::forward(plan.reference_dims(), f.values);
  const double inv_md = 1.0 / std::pow(static_cast<double>(M), d);
  for (cplx& c : chat) c *= inv_md;

  std::vector<cplx> what(plan.lattice.size(), cplx(0.0));
  int ks[3] = {0, 0, 0};
  std::function<void(int)> rec_k = [&](int axis) {
    if (axis == d) {
      // fold m = k + 2N t, t in {-1, 0, 1}^d
      cplx acc = 0.0;
      int t[3] = {0, 0, 0};
      std::function<void(int, double, std::size_t)> rec_t = [&](int a, double w,
                                                                std::size_t rflat) {
        if (a == d) {
          acc += w * chat[rflat];
          return;
        }
        const int k = plan.lattice.signed_index(ks[a]);
        for (t[a] = -1; t[a] <= 1; ++t[a]) {
          const int m = k + P * t[a];
          if (m < -M / 2 || m >= M / 2) continue;
          const int rslot = plan.reference.slot(m);
          const double wj = plan.axis_weight[rslot];
          if (wj == 0.0) continue;
          rec_t(a + 1, w * wj, rflat * M + rslot);
        }
      };
      rec_t(0, 1.0, 0);
      std::size_t lflat = 0;
      for (int j = 0; j < d; ++j) lflat = lflat * P + ks[j];
      what[lflat] = acc; // times P^d, cancelled by the inverse DFT below
      return;
    }
    for (ks[axis] = 0; ks[axis] < P; ++ks[axis]) rec_k(axis + 1);
  };
  rec_k(0);

  LatticeField out(plan.lattice);
  out.values = fft::backward(plan.lattice_dims(), what);
  return out;
}

/// J^ro / J^re: lattice extension, embedding, restriction to x1 > 0.
inline HalfContinuumField embed_halfspace(const TransferPlan& plan, const HalfLatticeField& u,
                                          TransferMode mode) {
  if (u.grid.kind != boundary_of(mode))
    throw GridMismatchError("embed_halfspace: half grid does not match the mode");
  LatticeField ext = mode == TransferMode::odd ? odd_extend(u)
                                               : even_extend(u, even_variant_of(mode));
  return restrict_continuum(embed(plan, ext));
}

/// K^ro / K^re: continuum extension, discretization, lattice restriction.
inline HalfLatticeField discretize_halfspace(const TransferPlan& plan,
                                             const HalfContinuumField& f, TransferMode mode) {
  if (!(f.grid == plan.reference))
    throw GridMismatchError("discretize_halfspace: field/plan mismatch");
  ContinuumField ext = mode == TransferMode::odd ? odd_extend(f) : even_extend(f);
  return restrict_lattice(discretize(plan, ext), boundary_of(mode));
}

/// Adjoint of embed_halfspace: zero-extend, discretize, lattice-extension adjoint.
inline HalfLatticeField embed_halfspace_adjoint(const TransferPlan& plan,
                                                const HalfContinuumField& g,
                                                TransferMode mode) {
  LatticeField w = discretize(plan, zero_extend(g));
  return mode == TransferMode::odd ? odd_extend_adjoint(w)
                                   : even_extend_adjoint(w, even_variant_of(mode));
}

/// Adjoint of discretize_halfspace: lattice zero-extend, embed, continuum
/// extension adjoint.
inline HalfContinuumField discretize_halfspace_adjoint(const TransferPlan& plan,
                                                       const HalfLatticeField& w,
                                                       TransferMode mode) {
  ContinuumField f = embed(plan, restrict_lattice_adjoint(w));
  return mode == TransferMode::odd ? odd_extend_adjoint(f) : even_extend_adjoint(f);
}

}  // namespace halfspace
