#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "conez/matrix.hpp"

namespace conez {

/// Eigendecomposition of a symmetric matrix: eigenvalues ascending, column i
/// of eigenvectors paired with eigenvalue i.
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

namespace detail {

// Off-diagonal Frobenius mass sqrt(sum_{i != j} a_ij^2), read from the upper
// triangle of a symmetric row-major buffer.
inline double offdiag_mass_upper(int n, const double* a) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = a[static_cast<std::size_t>(i) * n + j];
      s += v * v;
    }
  return std::sqrt(2.0 * s);
}

/// Cyclic-by-row Jacobi on a symmetric row-major buffer `a`.  Only the upper
/// triangle is maintained; the diagonal converges to the eigenvalues.  When
/// `v` is non-null it receives the accumulated rotations (columns are
/// eigenvectors).  Stops once the off-diagonal mass drops to `stop_mass`;
/// throws NoConvergence after 100 sweeps, which symmetric input in practice
/// never reaches.
inline void jacobi_cyclic(int n, double* a, double* v, double stop_mass) {
  auto at = [n](double* m, int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * n + j];
  };
  if (v) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) at(v, i, j) = (i == j) ? 1.0 : 0.0;
  }
  if (n == 1) return;

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_mass_upper(n, a) <= stop_mass) return;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);  // avoids theta^2 overflow
        } else {
          t = ((theta >= 0.0) ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;

        at(a, p, p) -= h;
        at(a, q, q) += h;
        at(a, p, q) = 0.0;

        auto rotate = [&](double& x, double& y) {
          const double g = x;
          const double z = y;
          x = g - s * (z + g * tau);
          y = z + s * (g - z * tau);
        };
        for (int r = 0; r < p; ++r) rotate(at(a, r, p), at(a, r, q));
        for (int r = p + 1; r < q; ++r) rotate(at(a, p, r), at(a, r, q));
        for (int r = q + 1; r < n; ++r) rotate(at(a, p, r), at(a, q, r));
        if (v) {
          for (int r = 0; r < n; ++r) rotate(at(v, r, p), at(v, r, q));
        }
      }
    }
  }
  throw NoConvergence("jacobi: sweep cap reached");
}

inline double symmetry_defect(const Matrix& s) {
  double d = 0.0;
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i + 1; j < s.dim(); ++j) d = std::max(d, std::abs(s(i, j) - s(j, i)));
  return d;
}

inline void require_symmetric(const Matrix& s, double eps_sym, const char* op) {
  const double defect = symmetry_defect(s);
  if (defect > eps_sym * std::max(1.0, s.frobenius_norm()))
    throw NotSymmetric(std::string(op) + ": symmetry defect " + std::to_string(defect));
}

// Fills `buf` with the symmetrized (S+S^T)/2 and returns the stopping mass
// for jacobi_cyclic, 1e-14 * max(1, ||S||_F).
inline double load_symmetrized(const Matrix& s, double* buf) {
  const int n = s.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      buf[static_cast<std::size_t>(i) * n + j] = (s(i, j) + s(j, i)) / 2.0;
  return 1e-14 * std::max(1.0, s.frobenius_norm());
}

}  // namespace detail

/// Symmetric eigendecomposition by cyclic Jacobi.  The input must be
/// symmetric within eps_sym (relative); iteration runs on (S+S^T)/2.
inline Spectrum sym_eigen(const Matrix& s, const Tolerances& tol = {}) {
  detail::require_symmetric(s, tol.eps_sym, "sym_eigen");
  const int n = s.dim();
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  const double stop = detail::load_symmetrized(s, a.data());
  Matrix v(n);
  detail::jacobi_cyclic(n, a.data(), v.data(), stop);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return a[static_cast<std::size_t>(i) * n + i] < a[static_cast<std::size_t>(j) * n + j];
  });

  Spectrum out{std::vector<double>(static_cast<std::size_t>(n)), Matrix(n)};
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.eigenvalues[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(src) * n + src];
    for (int r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, src);
  }
  return out;
}

/// Eigenvalues only (ascending); skips eigenvector accumulation.
inline std::vector<double> sym_eigenvalues(const Matrix& s, const Tolerances& tol = {}) {
  detail::require_symmetric(s, tol.eps_sym, "sym_eigenvalues");
  const int n = s.dim();
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  const double stop = detail::load_symmetrized(s, a.data());
  detail::jacobi_cyclic(n, a.data(), nullptr, stop);
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * n + i];
  std::sort(vals.begin(), vals.end());
  return vals;
}

struct PsdVerdict {
  bool psd;
  double lambda_min;
};

/// PSD iff lambda_min >= -eps_psd * max(1, ||S||_F).  The attained minimum
/// eigenvalue is always reported so callers can see boundary status.
/// Test NSD via psd_check(-1.0 * S).
inline PsdVerdict psd_check(const Matrix& s, const Tolerances& tol = {}) {
  const auto vals = sym_eigenvalues(s, tol);
  const double lambda_min = vals.front();
  return {lambda_min >= -tol.eps_psd * std::max(1.0, s.frobenius_norm()), lambda_min};
}

}  // namespace conez
