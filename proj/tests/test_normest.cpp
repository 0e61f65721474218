#include <catch2/catch_amalgamated.hpp>

#include "halfspace/dense.hpp"
#include "halfspace/normest.hpp"
#include "test_helpers.hpp"

using namespace halfspace;

namespace {

ErrorOperatorSpec small_spec(TheoremCase c, cplx z = cplx(-1.0, 0.0),
                             EvenVariant variant = EvenVariant::half_plane) {
  ErrorOperatorSpec spec;
  spec.theorem = c;
  spec.lattice = LatticeGrid(1, 0.5, 8);
  spec.reference = ReferenceGrid(1, 4.0, 32);
  spec.genfunc = make_meyer();
  spec.z = is_potential_case(c) && z.imag() == 0.0 ? cplx(-1.0, 2.0) : z;
  spec.even_variant = variant;
  if (is_potential_case(c)) spec.potential = make_cos_gauss_potential();
  if (is_psi_case(c)) spec.psi = make_power_function(1.0);
  return spec;
}

}  // namespace

TEST_CASE("error operator is well posed on an embedded field") {
  ErrorOperator op(small_spec(TheoremCase::dirichlet));
  TransferPlan plan(LatticeGrid(1, 0.5, 8), ReferenceGrid(1, 4.0, 32), make_meyer());
  HalfLatticeField u = random_half_lattice(
      HalfLatticeGrid(plan.lattice, BoundaryKind::dirichlet), 3);
  HalfContinuumField f = embed_halfspace(plan, u, TransferMode::odd);
  HalfContinuumField ef = op.apply(f);
  CHECK(std::isfinite(ef.norm()));
  CHECK(ef.norm() < 10.0 * f.norm());
}

TEST_CASE("error operator actions are linear") {
  for (TheoremCase c : {TheoremCase::dirichlet, TheoremCase::neumann,
                        TheoremCase::psi_dirichlet}) {
    ErrorOperator op(small_spec(c));
    HalfContinuumField f = random_half_continuum(op.domain(), 5);
    HalfContinuumField g = random_half_continuum(op.domain(), 6);
    const cplx a(1.3, -0.4);
    HalfContinuumField lhs = op.apply(linear_combination(a, f, cplx(1.0), g));
    HalfContinuumField rhs = op.apply(f);
    scale(rhs, a);
    axpy(rhs, cplx(1.0), op.apply(g));
    CHECK(distance(lhs, rhs) <= 1e-12 * (rhs.norm() + 1e-30));
  }
}

TEST_CASE("error operator adjoint matches inner products in every case") {
  for (TheoremCase c :
       {TheoremCase::dirichlet, TheoremCase::neumann, TheoremCase::potential_dirichlet,
        TheoremCase::potential_neumann, TheoremCase::psi_dirichlet,
        TheoremCase::psi_neumann}) {
    for (EvenVariant variant : {EvenVariant::half_plane, EvenVariant::paper_literal}) {
      ErrorOperator op(small_spec(c, cplx(-1.0, 0.0), variant));
      HalfContinuumField f = random_half_continuum(op.domain(), 7);
      HalfContinuumField g = random_half_continuum(op.domain(), 8);
      const cplx lhs = inner(op.apply(f), g);
      const cplx rhs = inner(f, op.apply_adjoint(g));
      INFO(to_string(c) << " / " << to_string(variant));
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
    }
  }
}

TEST_CASE("operator norms at z and conj z agree") {
  const cplx z(-1.0, 2.0);
  ErrorOperator a(small_spec(TheoremCase::dirichlet, z));
  ErrorOperator b(small_spec(TheoremCase::dirichlet, std::conj(z)));
  NormEstimate na = operator_norm(a, 1e-9, 5000, 2, 11);
  NormEstimate nb = operator_norm(b, 1e-9, 5000, 2, 12);
  CHECK(std::abs(na.value - nb.value) <= 1e-8 * na.value);
}

TEST_CASE("norm of a scaled projection is the scale") {
  // c * J^ro K^ro is c times an orthogonal projection
  LatticeGrid lat(1, 0.5, 8);
  ReferenceGrid ref(1, 4.0, 32);
  TransferPlan plan(lat, ref, make_meyer());
  const double c = 2.75;
  auto fwd = [&](const std::vector<cplx>& x) {
    HalfContinuumField f(ref);
    f.values = x;
    HalfContinuumField out =
        embed_halfspace(plan, discretize_halfspace(plan, f, TransferMode::odd),
                        TransferMode::odd);
    scale(out, cplx(c));
    return out.values;
  };
  auto adj = [&](const std::vector<cplx>& x) {
    HalfContinuumField f(ref);
    f.values = x;
    HalfContinuumField out = discretize_halfspace_adjoint(
        plan, embed_halfspace_adjoint(plan, f, TransferMode::odd), TransferMode::odd);
    scale(out, cplx(c));
    return out.values;
  };
  const std::size_t dim = HalfContinuumField(ref).values.size();
  NormEstimate est = operator_norm(fwd, adj, dim, 1e-10, 2000, 2, 13);
  CHECK(est.converged);
  CHECK(est.value == Catch::Approx(c).epsilon(1e-9));
}

TEST_CASE("power iteration matches the dense SVD oracle on a random 50x50 matrix") {
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> gauss(0.0, 1.0);
  dense::Matrix m(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  auto fwd = [&](const std::vector<cplx>& x) {
    return dense::from_eigen(m * dense::to_eigen(x));
  };
  auto adj = [&](const std::vector<cplx>& x) {
    return dense::from_eigen(m.adjoint() * dense::to_eigen(x));
  };
  NormEstimate est = operator_norm(fwd, adj, 50, 1e-10, 50000, 3, 17);
  const double exact = dense::svd_norm(m);
  CHECK(est.converged);
  CHECK(std::abs(est.value - exact) <= 1e-6 * exact);
}

TEST_CASE("restarts agree on a theorem-case operator") {
  ErrorOperator op(small_spec(TheoremCase::dirichlet));
  const double tol = 1e-6;
  double values[3];
  for (int r = 0; r < 3; ++r)
    values[r] = operator_norm(op, tol, 20000, 1, 100 + 7 * r).value;
  for (int r = 1; r < 3; ++r)
    CHECK(std::abs(values[r] - values[0]) <= 2.0 * tol * values[0]);
}

TEST_CASE("norm estimates are reproducible for a fixed seed") {
  ErrorOperator op(small_spec(TheoremCase::psi_dirichlet));
  NormEstimate a = operator_norm(op, 1e-6, 3000, 2, 12345);
  NormEstimate b = operator_norm(op, 1e-6, 3000, 2, 12345);
  CHECK(a.value == b.value);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("rejects inadmissible spectral points at assembly") {
  CHECK_THROWS_AS(ErrorOperator(small_spec(TheoremCase::dirichlet, cplx(1.0, 0.0))),
                  SpectralProximityError);
  ErrorOperatorSpec bad = small_spec(TheoremCase::potential_dirichlet);
  bad.z = cplx(-1.0, 0.0); // potential cases need Im z != 0
  CHECK_THROWS_AS(ErrorOperator(bad), SpectralProximityError);
}

TEST_CASE("residual certificate") {
  LatticeGrid g(1, 0.5, 8);
  LatticeSpectrum sp(g);
  StencilOperator op(StencilKind::full, g);
  auto apply_h = std::function<LatticeField(const LatticeField&)>(
      [&](const LatticeField& w) { return apply_stencil(op, w); });
  LatticeField v = random_lattice(g, 23);
  LatticeField u = resolve_full(sp, cplx(-1.0), v);

  SECTION("solved system certifies below 1e-10") {
    auto res = residual_certificate<LatticeField>(u, v, apply_h, cplx(-1.0));
    REQUIRE(res.has_value());
    CHECK(*res <= 1e-10);
  }
  SECTION("perturbation is detected") {
    LatticeField noisy = u;
    std::mt19937_64 rng(29);
    std::normal_distribution<double> gauss(0.0, 1e-3);
    for (cplx& x : noisy.values) x += cplx(gauss(rng), gauss(rng));
    auto res = residual_certificate<LatticeField>(noisy, v, apply_h, cplx(-1.0));
    REQUIRE(res.has_value());
    CHECK(*res >= 1e-4);
  }
  SECTION("zero right-hand side is flagged") {
    LatticeField zero(g);
    auto res = residual_certificate<LatticeField>(zero, zero, apply_h, cplx(-1.0));
    CHECK_FALSE(res.has_value());
  }
}

TEST_CASE("operator_norm rejects a nonpositive tolerance") {
  auto id = [](const std::vector<cplx>& x) { return x; };
  CHECK_THROWS_AS(operator_norm(id, id, 4, 0.0, 10, 1, 1), Error);
}
