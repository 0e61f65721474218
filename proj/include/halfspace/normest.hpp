#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "halfspace/calculus.hpp"
#include "halfspace/transfer.hpp"

namespace halfspace {

enum class TheoremCase {
  dirichlet,
  neumann,
  potential_dirichlet,
  potential_neumann,
  psi_dirichlet,
  psi_neumann
};

inline const char* to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::dirichlet: return "dirichlet";
    case TheoremCase::neumann: return "neumann";
    case TheoremCase::potential_dirichlet: return "potential-dirichlet";
    case TheoremCase::potential_neumann: return "potential-neumann";
    case TheoremCase::psi_dirichlet: return "psi-dirichlet";
    default: return "psi-neumann";
  }
}

inline TheoremCase theorem_case_from_string(const std::string& s) {
  for (TheoremCase c : {TheoremCase::dirichlet, TheoremCase::neumann,
                        TheoremCase::potential_dirichlet, TheoremCase::potential_neumann,
                        TheoremCase::psi_dirichlet, TheoremCase::psi_neumann})
    if (s == to_string(c)) return c;
  throw Error("unknown case: " + s);
}

inline bool is_potential_case(TheoremCase c) {
  return c == TheoremCase::potential_dirichlet || c == TheoremCase::potential_neumann;
}
inline bool is_psi_case(TheoremCase c) {
  return c == TheoremCase::psi_dirichlet || c == TheoremCase::psi_neumann;
}
inline bool is_neumann_case(TheoremCase c) {
  return c == TheoremCase::neumann || c == TheoremCase::potential_neumann ||
         c == TheoremCase::psi_neumann;
}

/// What to assemble: one theorem case at one (h, z).
struct ErrorOperatorSpec {
  TheoremCase theorem = TheoremCase::dirichlet;
  LatticeGrid lattice;
  ReferenceGrid reference;
  GeneratingFunction genfunc;
  cplx z{-1.0, 0.0};
  EvenVariant even_variant = EvenVariant::half_plane;
  PotentialSpec potential;         // potential cases only
  SpectralFunction psi;            // psi cases only
  PotentialSolveOptions solve_opts;
};

namespace detail {

inline void fill_random(std::vector<cplx>& v, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (cplx& c : v) c = cplx(gauss(rng), gauss(rng));
}

}  // namespace detail

/// Relative residual ||(H - z) u - v|| / ||v|| of a solved resolvent system,
/// with H given as a forward action. Returns nullopt when ||v|| = 0.
template <class Field>
std::optional<double> residual_certificate(const Field& u, const Field& v,
                                           const std::function<Field(const Field&)>& apply_h,
                                           cplx z) {
  const double vnorm = v.norm();
  if (vnorm == 0.0) return std::nullopt;
  Field hu = apply_h(u);
  for (std::size_t i = 0; i < hu.values.size(); ++i)
    hu.values[i] -= z * u.values[i] + v.values[i];
  return detail::weighted_norm(hu.values, hu.weight()) / vnorm;
}

/// The embedded-resolvent error operator
///   E = J (R_h(z)) K - R(z)
/// acting on the reference half grid, available as a forward action and its
/// adjoint (for power iteration on E*E).
class ErrorOperator {
 public:
  explicit ErrorOperator(const ErrorOperatorSpec& spec)
      : spec_(spec),
        plan_(spec.lattice, spec.reference, spec.genfunc),
        lattice_spectrum_(spec.lattice),
        reference_spectrum_(spec.reference),
        max_residual_(std::make_shared<double>(0.0)) {
    if (is_potential_case(spec.theorem)) {
      if (spec.z.imag() == 0.0)
        throw SpectralProximityError("ErrorOperator: potential cases need Im z != 0");
      reference_potential_ = reference_potential(spec.potential, spec.reference);
      const EvenVariant ext_variant = mode() == TransferMode::odd
                                          ? EvenVariant::paper_literal
                                          : even_variant_of(mode());
      lattice_potential_ = torus_potential(spec.potential, spec.lattice, ext_variant);
    } else {
      // admissibility of z for the free/psi resolvents (throws when bad)
      if (is_psi_case(spec.theorem)) {
        detail::check_resolvent_point(
            detail::map_spectrum(lattice_spectrum_.symbol, spec.psi.psi), spec.z,
            "ErrorOperator(psi)", spec.psi.power_s.has_value());
        detail::check_resolvent_point(
            detail::map_spectrum(reference_spectrum_.symbol, spec.psi.psi), spec.z,
            "ErrorOperator(psi)", spec.psi.power_s.has_value());
      } else {
        detail::check_resolvent_point(lattice_spectrum_.symbol, spec.z, "ErrorOperator");
        detail::check_resolvent_point(reference_spectrum_.symbol, spec.z, "ErrorOperator");
      }
    }
  }

  const ReferenceGrid& domain() const { return spec_.reference; }
  std::size_t dimension() const { return HalfContinuumField(spec_.reference).values.size(); }
  TransferMode mode() const {
    if (!is_neumann_case(spec_.theorem)) return TransferMode::odd;
    return spec_.even_variant == EvenVariant::half_plane ? TransferMode::even_halfplane
                                                         : TransferMode::even_paper;
  }
  BoundaryKind boundary() const {
    return is_neumann_case(spec_.theorem) ? BoundaryKind::neumann : BoundaryKind::dirichlet;
  }

  /// Largest certified residual seen in the inner solves so far.
  double max_inner_residual() const { return *max_residual_; }

  /// Certify one lattice-side solve against the forward operator (the
  /// stencil for the free cases) on a random input; folds the relative
  /// residual into max_inner_residual. Potential solves certify themselves.
  double probe_residual(std::uint64_t seed) const {
    if (is_potential_case(spec_.theorem)) return *max_residual_;
    HalfLatticeGrid hg(spec_.lattice, boundary());
    HalfLatticeField v(hg);
    std::mt19937_64 rng(mix_seed(seed));
    detail::fill_random(v.values, rng);
    HalfLatticeField u = half_resolvent(v, false);
    std::function<HalfLatticeField(const HalfLatticeField&)> forward;
    if (is_psi_case(spec_.theorem)) {
      const SpectralFunction psi = spec_.psi;
      forward = [psi](const HalfLatticeField& w) { return apply_psi_half(psi, w); };
    } else {
      const StencilOperator op(boundary() == BoundaryKind::dirichlet ? StencilKind::dirichlet
                                                                     : StencilKind::neumann,
                               spec_.lattice);
      forward = [op](const HalfLatticeField& w) { return apply_stencil(op, w); };
    }
    auto rel = residual_certificate<HalfLatticeField>(u, v, forward, spec_.z);
    const double value = rel.value_or(0.0);
    if (value > *max_residual_) *max_residual_ = value;
    return value;
  }

  HalfContinuumField apply(const HalfContinuumField& f) const { return act(f, false); }
  HalfContinuumField apply_adjoint(const HalfContinuumField& f) const { return act(f, true); }

 private:
  /// Half-lattice resolvent of the assembled case at z (or its adjoint at
  /// conj z when adj is set).
  HalfLatticeField half_resolvent(const HalfLatticeField& u, bool adj) const {
    const cplx z = adj ? std::conj(spec_.z) : spec_.z;
    if (is_potential_case(spec_.theorem)) {
      // reflection chain through the torus; the adjoint composes the part
      // adjoints since the paper-literal extension is not norm preserving
      double rel = 0.0;
      HalfLatticeField out(u.grid);
      if (!adj) {
        LatticeField ext = mode() == TransferMode::odd
                               ? odd_extend(u)
                               : even_extend(u, even_variant_of(mode()));
        LatticeField sol = resolve_torus_with_potential(lattice_spectrum_, lattice_potential_,
                                                        z, ext, spec_.solve_opts, &rel);
        out = restrict_lattice(sol, u.grid.kind);
      } else {
        LatticeField sol =
            resolve_torus_with_potential(lattice_spectrum_, lattice_potential_, z,
                                         restrict_lattice_adjoint(u), spec_.solve_opts, &rel);
        out = mode() == TransferMode::odd
                  ? odd_extend_adjoint(sol)
                  : even_extend_adjoint(sol, even_variant_of(mode()));
      }
      if (rel > *max_residual_) *max_residual_ = rel;
      return out;
    }
    if (is_psi_case(spec_.theorem)) return resolve_psi_half(spec_.psi, z, u);
    return boundary() == BoundaryKind::dirichlet ? resolve_dirichlet(z, u)
                                                 : resolve_neumann(z, u);
  }

  /// Full-grid solve of the assembled case's continuum operator.
  ContinuumField continuum_solve(cplx z, const ContinuumField& v) const {
    if (is_potential_case(spec_.theorem)) {
      double rel = 0.0;
      ContinuumField out = resolve_continuum_with_potential(
          reference_spectrum_, reference_potential_, z, v, spec_.solve_opts, &rel);
      if (rel > *max_residual_) *max_residual_ = rel;
      return out;
    }
    if (is_psi_case(spec_.theorem))
      return resolve_psi_continuum(reference_spectrum_, spec_.psi, z, v);
    return resolve_continuum(reference_spectrum_, z, v);
  }

  /// Half-space continuum resolvent R X (restrict - solve - extend) or its
  /// true adjoint X* R(conj z) E_0; the even extension's copied planes make
  /// the adjoint differ from the same chain at conj z.
  HalfContinuumField continuum_resolvent(const HalfContinuumField& f, bool adj) const {
    const bool dirichlet = boundary() == BoundaryKind::dirichlet;
    if (!adj) {
      ContinuumField ext = dirichlet ? odd_extend(f) : even_extend(f);
      return restrict_continuum(continuum_solve(spec_.z, ext));
    }
    ContinuumField sol = continuum_solve(std::conj(spec_.z), zero_extend(f));
    return dirichlet ? odd_extend_adjoint(sol) : even_extend_adjoint(sol);
  }

  HalfContinuumField act(const HalfContinuumField& f, bool adj) const {
    if (!(f.grid == spec_.reference)) throw GridMismatchError("ErrorOperator: grid mismatch");
    HalfContinuumField discrete(spec_.reference);
    if (!adj) {
      HalfLatticeField w = discretize_halfspace(plan_, f, mode());
      HalfLatticeField r = half_resolvent(w, false);
      discrete = embed_halfspace(plan_, r, mode());
    } else {
      // (J R_h K)^* = K^* R_h(conj z) J^*
      HalfLatticeField w = embed_halfspace_adjoint(plan_, f, mode());
      HalfLatticeField r = half_resolvent(w, true);
      discrete = discretize_halfspace_adjoint(plan_, r, mode());
    }
    HalfContinuumField continuum = continuum_resolvent(f, adj);
    for (std::size_t i = 0; i < discrete.values.size(); ++i)
      discrete.values[i] -= continuum.values[i];
    return discrete;
  }

  ErrorOperatorSpec spec_;
  TransferPlan plan_;
  LatticeSpectrum lattice_spectrum_;
  ReferenceSpectrum reference_spectrum_;
  std::vector<double> reference_potential_;
  std::vector<double> lattice_potential_;
  std::shared_ptr<double> max_residual_;
};

// ---------------------------------------------------------------------------
// Operator norm estimation
// ---------------------------------------------------------------------------

struct NormEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration on E*E for the operator norm of E, given as matrix-free
/// forward and adjoint actions on flat vectors. Returns the largest converged
/// singular-value estimate over the restarts; monotone in the restart count.
inline NormEstimate operator_norm(
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& apply,
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& apply_adjoint,
    std::size_t dim, double tol, int max_iter, int restarts, std::uint64_t seed) {
  if (!(tol > 0.0)) throw Error("operator_norm: tol must be positive");
  NormEstimate best;
  best.converged = true;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(mix_seed(seed + 0x9e37 * static_cast<std::uint64_t>(r)));
    std::vector<cplx> x(dim);
    detail::fill_random(x, rng);
    double xn = detail::vec_norm(x);
    for (cplx& c : x) c /= xn;
    double sigma_prev = -1.0;
    bool converged = false;
    int it = 0;
    for (; it < max_iter; ++it) {
      std::vector<cplx> y = apply(x);
      const double sigma = detail::vec_norm(y); // ||E x|| for unit x
      std::vector<cplx> xp = apply_adjoint(y);
      const double xpn = detail::vec_norm(xp);
      if (xpn == 0.0 || sigma == 0.0) {
        sigma_prev = 0.0;
        converged = true;
        break;
      }
      for (cplx& c : xp) c /= xpn;
      x = std::move(xp);
      if (sigma_prev >= 0.0 && std::abs(sigma - sigma_prev) <= tol * sigma) {
        sigma_prev = sigma;
        converged = true;
        ++it;
        break;
      }
      sigma_prev = sigma;
    }
    best.iterations += it;
    best.converged = best.converged && converged;
    if (sigma_prev > best.value) best.value = sigma_prev;
  }
  return best;
}

/// Convenience overload for ErrorOperator.
inline NormEstimate operator_norm(const ErrorOperator& op, double tol, int max_iter,
                                  int restarts, std::uint64_t seed) {
  const ReferenceGrid grid = op.domain();
  auto fwd = [&op, grid](const std::vector<cplx>& x) {
    HalfContinuumField f(grid);
    f.values = x;
    return op.apply(f).values;
  };
  auto adj = [&op, grid](const std::vector<cplx>& x) {
    HalfContinuumField f(grid);
    f.values = x;
    return op.apply_adjoint(f).values;
  };
  return operator_norm(fwd, adj, op.dimension(), tol, max_iter, restarts, seed);
}

}  // namespace halfspace
