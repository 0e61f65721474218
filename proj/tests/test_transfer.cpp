#include <catch2/catch_amalgamated.hpp>

#include "halfspace/transfer.hpp"
#include "test_helpers.hpp"

using namespace halfspace;

namespace {

TransferPlan make_plan_1d(int N, int M, GeneratingFunction g, double h = 1.0) {
  LatticeGrid lat(1, h, N);
  return TransferPlan(lat, ReferenceGrid(1, lat.box_half_length(), M), std::move(g));
}

}  // namespace

TEST_CASE("embedded impulse is the band-limited cardinal function") {
  // d = 1, h = 1, shannon: J delta_0 has Fourier-series coefficients
  // b(pi m / N) / (2N); at the integer sample points this is exactly the
  // sinc samples delta_{n,0}.
  const int N = 16, M = 64;
  TransferPlan plan = make_plan_1d(N, M, make_shannon());
  LatticeField v(plan.lattice);
  v.at({0}) = 1.0;
  ContinuumField f = embed(plan, v);

  // oracle: direct 31-term mode sum plus the half-weight edge modes
  auto oracle = [&](double x) {
    double s = 0.0;
    for (int m = -(N - 1); m <= N - 1; ++m) s += std::cos(pi * m * x / plan.reference.L);
    s += std::sqrt(2.0) * std::cos(pi * N * x / plan.reference.L);
    return s / (2.0 * N);
  };
  const double hf = plan.reference.spacing();
  for (int p = -M / 2; p < M / 2; ++p) {
    const double x = p * hf;
    CHECK(std::abs(f.at({p}) - cplx(oracle(x))) <= 1e-12);
  }
  // integer points carry the sinc samples delta_{n,0} up to the Nyquist edge
  // term: the lattice mode k = -N spreads over the two continuum modes +-N
  // with weight 1/sqrt(2) each (the unit-periodization edge convention), so
  // J delta_0 (n) = delta_{n,0} + (-1)^n (sqrt(2) - 1) / (2N) exactly.
  const double edge = (std::sqrt(2.0) - 1.0) / (2.0 * N);
  for (int n = -N; n < N; ++n) {
    const double expected = (n == 0 ? 1.0 : 0.0) + (n % 2 == 0 ? edge : -edge);
    CHECK(std::abs(f.at({2 * n}) - cplx(expected)) <= 1e-12);
  }
  // off-grid the periodization stays close to the true sinc
  for (int p : {1, 3, 9, 15}) {
    const double x = p * hf;
    CHECK(std::abs(f.at({p}) - cplx(std::sin(pi * x) / (pi * x))) <= 2e-2);
  }
}

TEST_CASE("embedding is isometric") {
  for (const GeneratingFunction& g : {make_shannon(), make_meyer()}) {
    TransferPlan plan1 = make_plan_1d(16, 48, g, 0.5);
    for (int i = 0; i < 10; ++i) {
      LatticeField v = random_lattice(plan1.lattice, 100 + i);
      CHECK(std::abs(embed(plan1, v).norm() / v.norm() - 1.0) <= 1e-12);
    }
    LatticeGrid lat2(2, 0.25, 8);
    TransferPlan plan2(lat2, ReferenceGrid(2, lat2.box_half_length(), 24), g);
    for (int i = 0; i < 10; ++i) {
      LatticeField v = random_lattice(lat2, 200 + i);
      CHECK(std::abs(embed(plan2, v).norm() / v.norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("embedding is linear") {
  TransferPlan plan = make_plan_1d(12, 36, make_meyer());
  LatticeField v = random_lattice(plan.lattice, 5);
  LatticeField w = random_lattice(plan.lattice, 6);
  const cplx a(0.7, -1.3);
  ContinuumField lhs = embed(plan, linear_combination(a, v, cplx(1.0), w));
  ContinuumField rhs = embed(plan, v);
  ContinuumField ew = embed(plan, w);
  scale(rhs, a);
  axpy(rhs, cplx(1.0), ew);
  CHECK(distance(lhs, rhs) <= 1e-13 * rhs.norm());
}

TEST_CASE("embedding transports reflection symmetry") {
  LatticeGrid lat(2, 0.5, 6);
  TransferPlan plan(lat, ReferenceGrid(2, lat.box_half_length(), 20), make_meyer());

  SECTION("odd sequences map to antisymmetric functions") {
    HalfLatticeField u = random_half_lattice(HalfLatticeGrid(lat, BoundaryKind::dirichlet), 7);
    ContinuumField f = embed(plan, odd_extend(u));
    const int M = plan.reference.M;
    double worst = 0.0;
    for (int p = 1; p < M / 2; ++p)
      for (int q = -M / 2; q < M / 2; ++q)
        worst = std::max(worst, std::abs(f.at({-p, q}) + f.at({p, q})));
    for (int q = -M / 2; q < M / 2; ++q) {
      worst = std::max(worst, std::abs(f.at({0, q})));
      worst = std::max(worst, std::abs(f.at({-M / 2, q})));
    }
    CHECK(worst <= 1e-13 * f.norm());
  }
  SECTION("zero-reflection-even sequences map to symmetric functions") {
    HalfLatticeField u = random_half_lattice(HalfLatticeGrid(lat, BoundaryKind::neumann), 9);
    ContinuumField f = embed(plan, even_extend(u, EvenVariant::paper_literal));
    const int M = plan.reference.M;
    double worst = 0.0;
    for (int p = 1; p < M / 2; ++p)
      for (int q = -M / 2; q < M / 2; ++q)
        worst = std::max(worst, std::abs(f.at({-p, q}) - f.at({p, q})));
    CHECK(worst <= 1e-13 * f.norm());
  }
}

TEST_CASE("discretization is the adjoint of the embedding") {
  LatticeGrid lat(2, 0.5, 6);
  TransferPlan plan(lat, ReferenceGrid(2, lat.box_half_length(), 18), make_meyer());
  for (int i = 0; i < 10; ++i) {
    LatticeField v = random_lattice(lat, 300 + i);
    ContinuumField f = random_continuum(plan.reference, 400 + i);
    const cplx lhs = inner(embed(plan, v), f);
    const cplx rhs = inner(v, discretize(plan, f));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("discretize after embed is the identity") {
  for (const GeneratingFunction& g : {make_shannon(), make_meyer()}) {
    TransferPlan plan = make_plan_1d(16, 48, g, 0.25);
    for (int i = 0; i < 5; ++i) {
      LatticeField v = random_lattice(plan.lattice, 500 + i);
      LatticeField back = discretize(plan, embed(plan, v));
      CHECK(distance(back, v) <= 1e-12 * v.norm());
    }
  }
}

TEST_CASE("fields outside the window band discretize to zero") {
  const int N = 8, M = 32;
  TransferPlan plan = make_plan_1d(N, M, make_shannon());
  // single mode beyond the shannon band |m| <= N
  ContinuumField f(plan.reference);
  std::vector<cplx> spectrum(f.values.size(), cplx(0.0));
  spectrum[plan.reference.slot(N + 3)] = 1.0;
  f.values = fft::backward({M}, spectrum);
  LatticeField w = discretize(plan, f);
  CHECK(w.norm() <= 1e-15 * f.norm());
}

TEST_CASE("embed-discretize composition is an orthogonal projection") {
  TransferPlan plan = make_plan_1d(12, 36, make_meyer(), 0.5);
  ContinuumField f = random_continuum(plan.reference, 61);
  ContinuumField g = random_continuum(plan.reference, 62);
  ContinuumField pf = embed(plan, discretize(plan, f));
  ContinuumField ppf = embed(plan, discretize(plan, pf));
  CHECK(distance(ppf, pf) <= 1e-12 * pf.norm());
  const cplx lhs = inner(pf, g);
  const cplx rhs = inner(f, embed(plan, discretize(plan, g)));
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
}

TEST_CASE("half-space odd chain: isometry and left inverse") {
  LatticeGrid lat(1, 0.125, 64);
  TransferPlan plan(lat, ReferenceGrid(1, lat.box_half_length(), 192), make_shannon());
  HalfLatticeGrid hg(lat, BoundaryKind::dirichlet);
  for (int i = 0; i < 10; ++i) {
    HalfLatticeField u = random_half_lattice(hg, 700 + i);
    HalfContinuumField ju = embed_halfspace(plan, u, TransferMode::odd);
    CHECK(std::abs(ju.norm() / u.norm() - 1.0) <= 1e-12);
    HalfLatticeField back = discretize_halfspace(plan, ju, TransferMode::odd);
    CHECK(distance(back, u) <= 1e-12 * u.norm());
  }
}

TEST_CASE("half-plane even chain: isometry defect is order h") {
  // fixed smooth bump away from the wall, embedded at shrinking h on a
  // common box
  const double L = 8.0;
  std::vector<double> defects;
  for (int k = 1; k <= 3; ++k) {
    const double h = std::pow(2.0, -k); // 1/2, 1/4, 1/8
    const int N = static_cast<int>(L / h);
    LatticeGrid lat(1, h, N);
    TransferPlan plan(lat, ReferenceGrid(1, L, next_fast_even(4 * N)), make_meyer());
    HalfLatticeField u{HalfLatticeGrid(lat, BoundaryKind::neumann)};
    for (int j = 1; j <= N; ++j) {
      const double x = h * j;
      u.at(j) = std::exp(-(x - 4.0) * (x - 4.0));
    }
    HalfContinuumField ju = embed_halfspace(plan, u, TransferMode::even_halfplane);
    defects.push_back(std::abs(ju.norm() / u.norm() - 1.0));
  }
  // defect shrinks roughly linearly in h
  const double c = defects[0] / 0.5;
  CHECK(defects[1] <= 1.5 * c * 0.25);
  CHECK(defects[2] <= 1.5 * c * 0.125);
}

TEST_CASE("half-space adjoints match inner products in every mode") {
  LatticeGrid lat(2, 0.5, 6);
  TransferPlan plan(lat, ReferenceGrid(2, lat.box_half_length(), 18), make_meyer());
  for (TransferMode mode :
       {TransferMode::odd, TransferMode::even_paper, TransferMode::even_halfplane}) {
    HalfLatticeGrid hg(lat, boundary_of(mode));
    HalfLatticeField u = random_half_lattice(hg, 801);
    HalfContinuumField g = random_half_continuum(plan.reference, 802);

    const cplx l1 = inner(embed_halfspace(plan, u, mode), g);
    const cplx r1 = inner(u, embed_halfspace_adjoint(plan, g, mode));
    CHECK(std::abs(l1 - r1) <= 1e-12 * std::abs(l1));

    const cplx l2 = inner(discretize_halfspace(plan, g, mode), u);
    const cplx r2 = inner(g, discretize_halfspace_adjoint(plan, u, mode));
    CHECK(std::abs(l2 - r2) <= 1e-12 * std::abs(l2));
  }
}

TEST_CASE("reference-grid inner products match direct spatial quadrature") {
  // <phi_{h,n}, g> through the discretization equals the trapezoidal
  // quadrature of the spatial product against the periodized generator
  const int N = 16, M = 64;
  const double h = 1.0, L = 16.0;
  GeneratingFunction gen = make_meyer();
  TransferPlan plan = make_plan_1d(N, M, gen);
  const double hf = plan.reference.spacing();

  const int mode_idx = 3;
  const double kappa = pi * mode_idx / L;
  ContinuumField g(plan.reference);
  for (int p = -M / 2; p < M / 2; ++p)
    g.at({p}) = std::exp(cplx(0.0, kappa * p * hf));

  LatticeField kg = discretize(plan, g);

  for (int n : {0, 2}) {
    cplx quad = 0.0;
    for (int p = -M / 2; p < M / 2; ++p) {
      const double x = p * hf;
      double phi = 0.0;
      for (int j = -40; j <= 40; ++j) phi += gen.spatial_axis((x - h * n + 2 * L * j) / h);
      quad += phi * g.at({p});
    }
    quad *= hf / h; // h^{-d} <phi_{h,n}, g>
    CHECK(std::abs(kg.at({n}) - quad) <= 1e-10);
  }
}

TEST_CASE("plan construction rejects inconsistent pairings") {
  LatticeGrid lat(1, 1.0, 8);
  CHECK_THROWS_AS(TransferPlan(lat, ReferenceGrid(1, 8.0, 16), make_shannon()),
                  GridMismatchError); // M too small for the band
  CHECK_THROWS_AS(TransferPlan(lat, ReferenceGrid(1, 4.0, 64), make_shannon()),
                  GridMismatchError); // box mismatch
  CHECK_THROWS_AS(TransferPlan(lat, ReferenceGrid(2, 8.0, 64), make_shannon()),
                  GridMismatchError); // dimension mismatch

  TransferPlan plan(lat, ReferenceGrid(1, 8.0, 32), make_shannon());
  LatticeGrid other(1, 1.0, 4);
  LatticeField v(other);
  CHECK_THROWS_AS(embed(plan, v), GridMismatchError);
  HalfLatticeField u{HalfLatticeGrid(lat, BoundaryKind::dirichlet)};
  CHECK_THROWS_AS(embed_halfspace(plan, u, TransferMode::even_paper), GridMismatchError);
}
