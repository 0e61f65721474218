#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "halfspace/core.hpp"

namespace halfspace {

struct GmresResult {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> history;
};

namespace detail {

inline double vec_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

inline cplx vec_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace detail

/// Restarted GMRES for A x = b with A given as a matrix-free action.
/// Stops when ||b - A x|| <= tol * ||b||.
inline GmresResult gmres(const std::function<std::vector<cplx>(const std::vector<cplx>&)>& apply,
                         const std::vector<cplx>& b, std::vector<cplx>& x, double tol,
                         int max_iter, int restart) {
  GmresResult res;
  const std::size_t n = b.size();
  if (x.size() != n) x.assign(n, cplx(0.0));
  const double bnorm = detail::vec_norm(b);
  if (bnorm == 0.0) {
    x.assign(n, cplx(0.0));
    res.converged = true;
    return res;
  }

  int total_iters = 0;
  while (total_iters < max_iter) {
    // residual r = b - A x
    std::vector<cplx> r = apply(x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = detail::vec_norm(r);
    res.history.push_back(beta / bnorm);
    if (beta / bnorm <= tol) {
      res.converged = true;
      res.iterations = total_iters;
      res.relative_residual = beta / bnorm;
      return res;
    }

    const int m = std::min(restart, max_iter - total_iters);
    std::vector<std::vector<cplx>> V;
    V.reserve(m + 1);
    {
      std::vector<cplx> v0 = r;
      for (cplx& c : v0) c /= beta;
      V.push_back(std::move(v0));
    }
    // Hessenberg (m+1) x m, Givens rotations, residual vector g
    std::vector<std::vector<cplx>> H(m + 1, std::vector<cplx>(m, cplx(0.0)));
    std::vector<cplx> cs(m), sn(m), g(m + 1, cplx(0.0));
    g[0] = beta;
    int k = 0;
    for (; k < m; ++k) {
      std::vector<cplx> w = apply(V[k]);
      for (int i = 0; i <= k; ++i) {
        H[i][k] = detail::vec_dot(V[i], w);
        for (std::size_t j = 0; j < n; ++j) w[j] -= H[i][k] * V[i][j];
      }
      H[k + 1][k] = detail::vec_norm(w);
      if (std::abs(H[k + 1][k]) > 1e-300) {
        for (cplx& c : w) c /= H[k + 1][k];
        V.push_back(std::move(w));
      }
      // apply accumulated rotations
      for (int i = 0; i < k; ++i) {
        const cplx t = std::conj(cs[i]) * H[i][k] + std::conj(sn[i]) * H[i + 1][k];
        H[i + 1][k] = -sn[i] * H[i][k] + cs[i] * H[i + 1][k];
        H[i][k] = t;
      }
      // new rotation to zero H[k+1][k]
      const double denom =
          std::sqrt(std::norm(H[k][k]) + std::norm(H[k + 1][k]));
      if (denom > 1e-300) {
        cs[k] = H[k][k] / denom;
        sn[k] = H[k + 1][k] / denom;
        H[k][k] = std::conj(cs[k]) * H[k][k] + std::conj(sn[k]) * H[k + 1][k];
        H[k + 1][k] = 0.0;
        const cplx t = std::conj(cs[k]) * g[k];
        g[k + 1] = -sn[k] * g[k];
        g[k] = t;
      }
      ++total_iters;
      res.history.push_back(std::abs(g[k + 1]) / bnorm);
      if (std::abs(g[k + 1]) / bnorm <= tol || V.size() == static_cast<std::size_t>(k) + 1) {
        ++k;
        break;
      }
    }
    // back substitution for y in H(0:k,0:k) y = g
    std::vector<cplx> y(k, cplx(0.0));
    for (int i = k - 1; i >= 0; --i) {
      cplx s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H[i][j] * y[j];
      y[i] = s / H[i][i];
    }
    for (int i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) x[j] += y[i] * V[i][j];
  }

  // final residual
  std::vector<cplx> r = apply(x);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  res.relative_residual = detail::vec_norm(r) / bnorm;
  res.converged = res.relative_residual <= tol;
  res.iterations = total_iters;
  return res;
}

}  // namespace halfspace
