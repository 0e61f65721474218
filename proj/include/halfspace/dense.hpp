#pragma once

// Dense linear-algebra oracles (Eigen). These deliberately avoid the fast
// transform paths so they can certify them: operators are assembled entry by
// entry from the stencils and factorized directly.

#include <Eigen/Dense>

#include "halfspace/fields.hpp"
#include "halfspace/operators.hpp"

namespace halfspace {
namespace dense {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Vector to_eigen(const std::vector<cplx>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

inline std::vector<cplx> from_eigen(const Vector& v) {
  std::vector<cplx> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v[i];
  return out;
}

/// Assemble any linear action column by column.
template <class Apply>
Matrix assemble(std::size_t rows, std::size_t cols, Apply&& apply) {
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<cplx> e(cols, cplx(0.0));
  for (std::size_t j = 0; j < cols; ++j) {
    e[j] = 1.0;
    std::vector<cplx> col = apply(e);
    for (std::size_t i = 0; i < rows; ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    e[j] = 0.0;
  }
  return m;
}

/// Dense matrix of the full torus Laplacian.
inline Matrix full_matrix(const LatticeGrid& g) {
  StencilOperator op(StencilKind::full, g);
  return assemble(g.size(), g.size(), [&](const std::vector<cplx>& e) {
    LatticeField v(g);
    v.values = e;
    return apply_stencil(op, v).values;
  });
}

/// Dense matrix of the truncated Dirichlet or Neumann Laplacian.
inline Matrix half_matrix(const HalfLatticeGrid& hg) {
  StencilOperator op(hg.kind == BoundaryKind::dirichlet ? StencilKind::dirichlet
                                                        : StencilKind::neumann,
                     hg.parent);
  return assemble(hg.size(), hg.size(), [&](const std::vector<cplx>& e) {
    HalfLatticeField u(hg);
    u.values = e;
    return apply_stencil(op, u).values;
  });
}

/// Solve (A - z I) x = b by partial-pivot LU.
inline std::vector<cplx> resolve(const Matrix& a, cplx z, const std::vector<cplx>& b) {
  Matrix shifted = a;
  shifted.diagonal().array() -= z;
  return from_eigen(shifted.partialPivLu().solve(to_eigen(b)));
}

/// Eigenvalues of a Hermitian operator matrix, ascending.
inline std::vector<double> hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  std::vector<double> out(static_cast<std::size_t>(es.eigenvalues().size()));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
  return out;
}

/// psi(A) b for Hermitian positive semidefinite A via eigen decomposition.
inline std::vector<cplx> hermitian_function_apply(const Matrix& a,
                                                  const std::function<double(double)>& psi,
                                                  const std::vector<cplx>& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  Vector y = es.eigenvectors().adjoint() * to_eigen(b);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    y[i] *= psi(std::max(0.0, es.eigenvalues()[i]));
  return from_eigen(es.eigenvectors() * y);
}

/// Largest singular value.
inline double svd_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()[0];
}

}  // namespace dense
}  // namespace halfspace
