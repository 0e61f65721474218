#include <catch2/catch_amalgamated.hpp>

#include "halfspace/reflect.hpp"
#include "test_helpers.hpp"

using namespace halfspace;

TEST_CASE("odd extension, d=1 worked example") {
  LatticeGrid g(1, 1.0, 3);
  HalfLatticeField u{HalfLatticeGrid(g, BoundaryKind::dirichlet)};
  u.at(1) = 1.0;
  u.at(2) = 2.0;
  LatticeField v = odd_extend(u);
  CHECK(v.at({-2}) == cplx(-2.0));
  CHECK(v.at({-1}) == cplx(-1.0));
  CHECK(v.at({0}) == cplx(0.0));
  CHECK(v.at({1}) == cplx(1.0));
  CHECK(v.at({2}) == cplx(2.0));
  CHECK(v.at({-3}) == cplx(0.0));
}

TEST_CASE("odd extension of zero is zero") {
  LatticeGrid g(1, 0.5, 5);
  HalfLatticeField u{HalfLatticeGrid(g, BoundaryKind::dirichlet)};
  LatticeField v = odd_extend(u);
  for (const cplx& x : v.values) CHECK(x == cplx(0.0));
}

TEST_CASE("odd extension doubles the squared norm") {
  for (int d : {1, 2}) {
    LatticeGrid g(d, 0.25, 6);
    HalfLatticeField u = random_half_lattice(HalfLatticeGrid(g, BoundaryKind::dirichlet), 7);
    LatticeField v = odd_extend(u);
    const double lhs = v.norm() * v.norm();
    const double rhs = 2.0 * u.norm() * u.norm();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
  }
}

TEST_CASE("odd extension is antisymmetric with zero fixed planes") {
  LatticeGrid g(2, 0.5, 4);
  HalfLatticeField u = random_half_lattice(HalfLatticeGrid(g, BoundaryKind::dirichlet), 3);
  LatticeField v = odd_extend(u);
  for (int n = 1; n <= g.N - 1; ++n)
    for (int t = -g.N; t < g.N; ++t) CHECK(v.at({-n, t}) == -v.at({n, t}));
  for (int t = -g.N; t < g.N; ++t) {
    CHECK(v.at({0, t}) == cplx(0.0));
    CHECK(v.at({-g.N, t}) == cplx(0.0));
  }
}

TEST_CASE("odd extension rejects the Neumann half grid") {
  LatticeGrid g(1, 1.0, 3);
  HalfLatticeField u{HalfLatticeGrid(g, BoundaryKind::neumann)};
  CHECK_THROWS_AS(odd_extend(u), GridMismatchError);
}

TEST_CASE("even extension, d=1 worked examples") {
  LatticeGrid g2(1, 1.0, 2);
  HalfLatticeField u{HalfLatticeGrid(g2, BoundaryKind::neumann)};
  u.at(1) = 1.0;
  u.at(2) = 2.0;

  SECTION("paper literal") {
    LatticeField v = even_extend(u, EvenVariant::paper_literal);
    CHECK(v.at({0}) == cplx(1.0));
    CHECK(v.at({-1}) == cplx(1.0));
    CHECK(v.at({-2}) == cplx(2.0));
    CHECK(v.at({1}) == cplx(1.0));
  }
  SECTION("half plane, wider grid so no wrap is involved") {
    LatticeGrid g3(1, 1.0, 3);
    HalfLatticeField w{HalfLatticeGrid(g3, BoundaryKind::neumann)};
    w.at(1) = 1.0;
    w.at(2) = 2.0;
    w.at(3) = 3.0;
    LatticeField v = even_extend(w, EvenVariant::half_plane);
    CHECK(v.at({0}) == cplx(1.0));
    CHECK(v.at({-1}) == cplx(2.0));
    CHECK(v.at({-2}) == cplx(3.0)); // u(3) since the range permits it
    CHECK(v.at({-3}) == cplx(3.0)); // alias slot of the index j = 3
  }
  SECTION("half plane on the tight grid wraps the far index") {
    LatticeField v = even_extend(u, EvenVariant::half_plane);
    CHECK(v.at({0}) == cplx(1.0));
    CHECK(v.at({-1}) == cplx(2.0));
    CHECK(v.at({-2}) == cplx(2.0));
  }
}

TEST_CASE("even extension of a constant is constant") {
  LatticeGrid g(2, 0.5, 4);
  HalfLatticeField u{HalfLatticeGrid(g, BoundaryKind::neumann)};
  for (cplx& x : u.values) x = cplx(3.25, -1.0);
  for (EvenVariant v : {EvenVariant::half_plane, EvenVariant::paper_literal}) {
    LatticeField e = even_extend(u, v);
    for (const cplx& x : e.values) CHECK(x == cplx(3.25, -1.0));
  }
}

TEST_CASE("even extension norms") {
  LatticeGrid g(1, 0.5, 8);
  HalfLatticeField u = random_half_lattice(HalfLatticeGrid(g, BoundaryKind::neumann), 11);

  SECTION("half plane doubles the squared norm exactly") {
    LatticeField v = even_extend(u, EvenVariant::half_plane);
    const double lhs = v.norm() * v.norm();
    const double rhs = 2.0 * u.norm() * u.norm();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
  }
  SECTION("paper literal adds the first slice when clear of the far wall") {
    u.at(g.N) = 0.0; // the truncated torus stores index N only once
    LatticeField v = even_extend(u, EvenVariant::paper_literal);
    const double hd = u.weight();
    double first_slice = hd * std::norm(u.at(1));
    const double lhs = v.norm() * v.norm();
    const double rhs = 2.0 * u.norm() * u.norm() + first_slice;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
  }
}

TEST_CASE("even extension rejects the Dirichlet half grid") {
  LatticeGrid g(1, 1.0, 3);
  HalfLatticeField u{HalfLatticeGrid(g, BoundaryKind::dirichlet)};
  CHECK_THROWS_AS(even_extend(u, EvenVariant::half_plane), GridMismatchError);
}

TEST_CASE("restriction undoes the extensions bitwise") {
  LatticeGrid g(2, 0.25, 5);
  HalfLatticeField u = random_half_lattice(HalfLatticeGrid(g, BoundaryKind::dirichlet), 17);
  HalfLatticeField back = restrict_lattice(odd_extend(u), BoundaryKind::dirichlet);
  REQUIRE(back.values.size() == u.values.size());
  for (std::size_t i = 0; i < u.values.size(); ++i) CHECK(back.values[i] == u.values[i]);

  HalfLatticeField w = random_half_lattice(HalfLatticeGrid(g, BoundaryKind::neumann), 19);
  for (EvenVariant v : {EvenVariant::half_plane, EvenVariant::paper_literal}) {
    HalfLatticeField back2 = restrict_lattice(even_extend(w, v), BoundaryKind::neumann);
    for (std::size_t i = 0; i < w.values.size(); ++i) CHECK(back2.values[i] == w.values[i]);
  }
}

TEST_CASE("restriction drops the n1 = 0 slice") {
  LatticeGrid g(1, 1.0, 3);
  LatticeField v(g);
  v.at({0}) = 5.0;
  v.at({1}) = 1.0;
  v.at({2}) = 2.0;
  HalfLatticeField u = restrict_lattice(v, BoundaryKind::dirichlet);
  CHECK(u.at(1) == cplx(1.0));
  CHECK(u.at(2) == cplx(2.0));
  CHECK(u.values.size() == 2);
}

TEST_CASE("lattice extension adjoints match inner products") {
  LatticeGrid g(2, 0.5, 4);
  LatticeField v = random_lattice(g, 23);

  HalfLatticeField ud = random_half_lattice(HalfLatticeGrid(g, BoundaryKind::dirichlet), 29);
  cplx lhs = inner(odd_extend(ud), v);
  cplx rhs = inner(ud, odd_extend_adjoint(v));
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));

  HalfLatticeField un = random_half_lattice(HalfLatticeGrid(g, BoundaryKind::neumann), 31);
  for (EvenVariant var : {EvenVariant::half_plane, EvenVariant::paper_literal}) {
    cplx l2 = inner(even_extend(un, var), v);
    cplx r2 = inner(un, even_extend_adjoint(v, var));
    CHECK(std::abs(l2 - r2) <= 1e-12 * std::abs(l2));
  }

  cplx l3 = inner(restrict_lattice(v, BoundaryKind::neumann), un);
  cplx r3 = inner(v, restrict_lattice_adjoint(un));
  CHECK(std::abs(l3 - r3) <= 1e-12 * std::abs(l3));
}

TEST_CASE("continuum odd extension reproduces an odd function") {
  ReferenceGrid g(2, 6.0, 48);
  auto fn = [](const double* x) {
    return cplx(x[0] * std::exp(-(x[0] * x[0] + x[1] * x[1])));
  };
  HalfContinuumField f = sample_half_continuum(g, fn);
  ContinuumField v = odd_extend(f);
  ContinuumField direct = sample_continuum(g, fn);
  // the plane x1 = -L is absent from the odd extension image; the sampled
  // function is negligible there
  CHECK(max_abs_diff(v, direct) <= 1e-12);
}

TEST_CASE("continuum even extension of the constant") {
  ReferenceGrid g(1, 2.0, 16);
  HalfContinuumField f(g);
  for (cplx& x : f.values) x = 1.0;
  ContinuumField v = even_extend(f);
  for (const cplx& x : v.values) CHECK(x == cplx(1.0));
}

TEST_CASE("zero extension then restriction is the identity") {
  ReferenceGrid g(2, 2.0, 12);
  HalfContinuumField f = random_half_continuum(g, 37);
  HalfContinuumField back = restrict_continuum(zero_extend(f));
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
}

TEST_CASE("continuum restriction undoes both extensions") {
  ReferenceGrid g(1, 2.0, 20);
  HalfContinuumField f = random_half_continuum(g, 41);
  HalfContinuumField b1 = restrict_continuum(odd_extend(f));
  HalfContinuumField b2 = restrict_continuum(even_extend(f));
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    CHECK(b1.values[i] == f.values[i]);
    CHECK(b2.values[i] == f.values[i]);
  }
}

TEST_CASE("continuum extension norms and adjoints") {
  ReferenceGrid g(2, 2.0, 12);
  HalfContinuumField f = random_half_continuum(g, 43);

  ContinuumField of = odd_extend(f);
  CHECK(std::abs(of.norm() * of.norm() - 2.0 * f.norm() * f.norm()) <=
        1e-12 * f.norm() * f.norm());

  ContinuumField v = random_continuum(g, 47);
  cplx l1 = inner(odd_extend(f), v);
  cplx r1 = inner(f, odd_extend_adjoint(v));
  CHECK(std::abs(l1 - r1) <= 1e-12 * std::abs(l1));

  cplx l2 = inner(even_extend(f), v);
  cplx r2 = inner(f, even_extend_adjoint(v));
  CHECK(std::abs(l2 - r2) <= 1e-12 * std::abs(l2));

  cplx l3 = inner(zero_extend(f), v);
  cplx r3 = inner(f, restrict_continuum(v));
  CHECK(std::abs(l3 - r3) <= 1e-12 * std::abs(l3));
}

TEST_CASE("sampling an odd function gives an antisymmetric sequence") {
  // continuum and lattice extensions commute through sampling
  LatticeGrid g(1, 0.5, 8);
  auto fn = [](double x) { return x * std::exp(-x * x); };
  HalfLatticeField u{HalfLatticeGrid(g, BoundaryKind::dirichlet)};
  for (int j = 1; j <= g.N - 1; ++j) u.at(j) = fn(g.h * j);
  LatticeField v = odd_extend(u);
  for (int n = -g.N; n < g.N; ++n) {
    const double expected = (n == -g.N) ? 0.0 : fn(g.h * n);
    CHECK(std::abs(v.at({n}) - cplx(expected)) <= 1e-6);
  }
}
