#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "conez/eigen.hpp"
#include "conez/lorentz.hpp"
#include "conez/matrix.hpp"
#include "conez/rng.hpp"
#include "conez/zcone.hpp"

namespace conez {

/// Membership verdict for the dual of the Lorentz Z-operator cone: tr(B) = 0
/// and J*B negative semidefinite.  Negative semidefiniteness here includes
/// symmetry of J*B, so the certificate reports the trace residual, the
/// symmetry defect of J*B, and lambda_max of its symmetric part; all three
/// must clear their tolerances (relative to max(1, ||B||_F)).
struct DualCertificate {
  bool member;
  double trace_residual;
  double sym_defect;
  double lambda_max_jb;
};

namespace detail {

// J*B computed without forming J: rows 2..n flip sign.
inline Matrix reflect_rows(const Matrix& b) {
  const int n = b.dim();
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    const double ji = (i == 0) ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) m(i, j) = ji * b(i, j);
  }
  return m;
}

}  // namespace detail

inline DualCertificate dual_oracle_lorentz(const Matrix& b, const Tolerances& tol = {}) {
  if (!b.is_finite()) throw NonFinite("dual_oracle_lorentz: non-finite input");
  const Matrix jb = detail::reflect_rows(b);
  const double scale = std::max(1.0, b.frobenius_norm());
  const double trace_residual = b.trace();
  const double sym_defect = detail::symmetry_defect(jb);
  const auto vals = sym_eigenvalues(sym_skew_split(jb).sym, tol);
  const double lambda_max = vals.back();
  const bool member = std::abs(trace_residual) <= tol.eps_zero * scale &&
                      sym_defect <= tol.eps_sym * scale && lambda_max <= tol.eps_psd * scale;
  return {member, trace_residual, sym_defect, lambda_max};
}

enum class DualKind { PsdBalanced, DyadSum };

/// -J * P0 after correcting P0 so that tr(J * P0) = 0.  A positive J-trace is
/// cancelled by adding mass on e2 e2^T (J-trace -1), a negative one on
/// e1 e1^T (J-trace +1); both corrections keep P0 PSD.  Index 2 is fixed for
/// determinism; requires n >= 2 unless the J-trace already vanishes.
inline Matrix dual_from_psd(Matrix p0) {
  const int n = p0.dim();
  double jtrace = p0(0, 0);
  for (int i = 1; i < n; ++i) jtrace -= p0(i, i);
  if (jtrace > 0.0) {
    if (n < 2) throw DimensionMismatch("dual_from_psd: cannot balance a 1x1 positive J-trace");
    p0(1, 1) += jtrace;
  } else if (jtrace < 0.0) {
    p0(0, 0) += -jtrace;
  }
  Matrix b = detail::reflect_rows(p0);
  return -1.0 * b;
}

/// Generators for dual members.  PsdBalanced reaches full-rank members via
/// B = -J * (G G^T balanced to zero J-trace); DyadSum sums one to three
/// complementary dyads -y x^T and reaches the extreme-ray structure.
inline Matrix sample_dual_lorentz(int n, rng::Engine& eng, DualKind kind) {
  if (kind == DualKind::PsdBalanced) {
    if (n == 1) return Matrix(1);  // the 1-d dual cone is {0}
    const Matrix g = rng::gaussian_matrix(n, eng);
    return dual_from_psd(g * g.transposed());
  }
  Matrix b(n);
  const int k = rng::uniform_int(eng, 1, 3);
  for (int i = 0; i < k; ++i) {
    const CompPair pair = sample_complementary_pair(n, eng);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        b(r, c) -= pair.y[static_cast<std::size_t>(r)] * pair.x[static_cast<std::size_t>(c)];
  }
  return b;
}

/// The complementary dyad -y x^T; entry (i, j) is -y_i * x_j.
inline Matrix dyad_from_pair(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw DimensionMismatch("dyad_from_pair: lengths " + std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()));
  if (x.empty()) throw DimensionMismatch("dyad_from_pair: empty vectors");
  const int n = static_cast<int>(x.size());
  Matrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b(i, j) = -y[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
  return b;
}

/// Inverts -y x^T for rank-one dual members: eigendecomposes P0 = -J*B as
/// lambda v v^T, orients v so v_1 >= 0, and returns x = v, y = lambda * J v.
/// The pair lands in C(L) because v^T J v = -tr(B) / lambda vanishes for
/// members.  Throws NotMember when the oracle rejects and NotRankOne when P0
/// has a second eigenvalue above tolerance.
inline std::pair<Vector, Vector> dyad_factor(const Matrix& b, const Tolerances& tol = {}) {
  const DualCertificate cert = dual_oracle_lorentz(b, tol);
  if (!cert.member)
    throw NotMember("dyad_factor: trace residual " + std::to_string(cert.trace_residual) +
                    ", lambda_max(JB) " + std::to_string(cert.lambda_max_jb));
  const int n = b.dim();
  const double scale = std::max(1.0, b.frobenius_norm());
  Matrix p0 = -1.0 * detail::reflect_rows(b);
  const Spectrum spec = sym_eigen(sym_skew_split(p0).sym, tol);
  const double lambda = spec.eigenvalues.back();
  if (n >= 2 && spec.eigenvalues[static_cast<std::size_t>(n) - 2] > tol.eps_psd * scale)
    throw NotRankOne("dyad_factor: second eigenvalue " +
                     std::to_string(spec.eigenvalues[static_cast<std::size_t>(n) - 2]));
  Vector x(static_cast<std::size_t>(n), 0.0);
  Vector y(static_cast<std::size_t>(n), 0.0);
  if (lambda <= tol.eps_psd * scale) return {std::move(x), std::move(y)};

  const double flip = (spec.eigenvectors(0, n - 1) >= 0.0) ? 1.0 : -1.0;
  for (int i = 0; i < n; ++i) {
    const double vi = flip * spec.eigenvectors(i, n - 1);
    x[static_cast<std::size_t>(i)] = vi;
    y[static_cast<std::size_t>(i)] = lambda * ((i == 0) ? vi : -vi);
  }
  return {std::move(x), std::move(y)};
}

/// Dual of the orthant Z-matrix cone: nonpositive entries, zero diagonal
/// (within eps_zero * max(1, ||B||_F)).
inline bool dual_oracle_orthant(const Matrix& b, const Tolerances& tol = {}) {
  const double eps = tol.eps_zero * std::max(1.0, b.frobenius_norm());
  for (int i = 0; i < b.dim(); ++i) {
    if (std::abs(b(i, i)) > eps) return false;
    for (int j = 0; j < b.dim(); ++j)
      if (b(i, j) > eps) return false;
  }
  return true;
}

/// Random orthant dual member: nonpositive half-Gaussian off-diagonal, zero
/// diagonal.
inline Matrix sample_dual_orthant(int n, rng::Engine& eng) {
  Matrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) b(i, j) = -std::abs(rng::gaussian(eng));
  return b;
}

}  // namespace conez
