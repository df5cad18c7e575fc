#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "conez/eigen.hpp"
#include "conez/lorentz.hpp"
#include "conez/matrix.hpp"
#include "conez/rng.hpp"

namespace conez {

enum class Cone { Lorentz, Orthant };

/// The gamma-parametrized form A = gamma * I - J * (P + Q) with P symmetric
/// PSD and Q skew-symmetric.
struct ZDecomposition {
  double gamma;
  Matrix psd_part;   // P
  Matrix skew_part;  // Q
};

/// Membership verdict for the cone of Lorentz Z-operators.  gamma_star is the
/// maximizer of the spectral slack g(gamma) = lambda_min(gamma * J - (JA + A^T J));
/// membership holds iff the attained slack clears -eps_psd * max(1, ||form||_F).
/// The parametrization gamma equals gamma_star / 2; both are kept because they
/// differ by exactly that factor of two.
struct ZCertificate {
  bool member;
  double gamma_star;
  double lambda_min_at_star;
  std::optional<ZDecomposition> decomposition;
};

/// The symmetric form J*A + A^T*J whose shifted definiteness decides
/// membership.  Symmetric by construction.
inline Matrix z_symmetric_form(const Matrix& a) {
  const int n = a.dim();
  Matrix s(n);
  // (J A)_ij = sigma_i * a_ij with sigma = (1, -1, ..., -1); the form adds the
  // transpose of the same product.
  for (int i = 0; i < n; ++i) {
    const double si = (i == 0) ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) {
      const double sj = (j == 0) ? 1.0 : -1.0;
      s(i, j) = si * a(i, j) + sj * a(j, i);
    }
  }
  return s;
}

namespace detail {

// lambda_min(gamma * J - S) without allocations: `work` holds n*n scratch.
inline double spectral_slack_into(int n, const Matrix& s, double gamma, double* work) {
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = -s(i, j);
      if (i == j) v += (i == 0) ? gamma : -gamma;
      work[static_cast<std::size_t>(i) * n + j] = v;
      sq += v * v;
    }
  }
  jacobi_cyclic(n, work, nullptr, 1e-14 * std::max(1.0, std::sqrt(sq)));
  double lo = work[0];
  for (int i = 1; i < n; ++i) lo = std::min(lo, work[static_cast<std::size_t>(i) * n + i]);
  return lo;
}

inline ZDecomposition decompose_at(const Matrix& a, const Matrix& s, double gamma_star) {
  const int n = a.dim();
  const double gamma = gamma_star / 2.0;
  Matrix p(n);
  Matrix q(n);
  for (int i = 0; i < n; ++i) {
    const double ji = (i == 0) ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) {
      const double jd = (i == j) ? ji : 0.0;
      p(i, j) = (gamma_star * jd - s(i, j)) / 2.0;
      // Q = gamma * J - J*A - P, rows of J*A are sign-flipped rows of A.
      q(i, j) = gamma * jd - ji * a(i, j) - p(i, j);
    }
  }
  return {gamma, std::move(p), std::move(q)};
}

}  // namespace detail

/// Spectral slack g(gamma) = lambda_min(gamma * J - (JA + A^T J)).  Concave in
/// gamma; membership in the Z-operator cone means sup_gamma g >= 0 (within
/// tolerance).
inline double z_spectral_slack(const Matrix& a, double gamma) {
  const int n = a.dim();
  const Matrix s = z_symmetric_form(a);
  std::vector<double> work(static_cast<std::size_t>(n) * n);
  return detail::spectral_slack_into(n, s, gamma, work.data());
}

/// Membership oracle for the Lorentz Z-operator cone.  Maximizes the concave
/// spectral slack by golden-section search over [-2||S||_F - 1, 2||S||_F + 1],
/// a bracket that always contains the maximizer because g(gamma) <= ||S||_2 - |gamma|
/// while g(0) >= -||S||_2.  On membership the certificate carries the
/// gamma/P/Q decomposition evaluated at the maximizer.
inline ZCertificate z_oracle_lorentz(const Matrix& a, const Tolerances& tol = {}) {
  if (!a.is_finite()) throw NonFinite("z_oracle_lorentz: non-finite input");
  const int n = a.dim();
  const Matrix s = z_symmetric_form(a);

  if (n == 1) {
    // g(gamma) = gamma - s is unbounded above: every scalar map qualifies.
    const double gamma_star = s(0, 0);
    ZCertificate cert{true, gamma_star, 0.0, std::nullopt};
    cert.decomposition = detail::decompose_at(a, s, gamma_star);
    return cert;
  }

  const double s_norm = s.frobenius_norm();
  const double scale = std::max(1.0, s_norm);
  std::vector<double> work(static_cast<std::size_t>(n) * n);
  auto slack = [&](double gamma) { return detail::spectral_slack_into(n, s, gamma, work.data()); };

  double lo = -(2.0 * s_norm + 1.0);
  double hi = 2.0 * s_norm + 1.0;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = slack(c);
  double fd = slack(d);
  while (hi - lo > 1e-10 * scale) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = slack(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = slack(d);
    }
  }
  const double gamma_star = (lo + hi) / 2.0;
  const double attained = slack(gamma_star);

  ZCertificate cert{attained >= -tol.eps_psd * scale, gamma_star, attained, std::nullopt};
  if (cert.member) cert.decomposition = detail::decompose_at(a, s, gamma_star);
  return cert;
}

/// Builds gamma * I - J * (P + Q); validates that P is PSD and Q is skew.
inline Matrix z_assemble(double gamma, const Matrix& psd_part, const Matrix& skew_part,
                         const Tolerances& tol = {}) {
  require_same_dim(psd_part, skew_part, "z_assemble");
  if (!psd_check(psd_part, tol).psd) throw NotPsd("z_assemble: P fails the PSD check");
  double skew_defect = 0.0;
  const int n = psd_part.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      skew_defect = std::max(skew_defect, std::abs(skew_part(i, j) + skew_part(j, i)));
  if (skew_defect > tol.eps_sym * std::max(1.0, skew_part.frobenius_norm()))
    throw NotSkew("z_assemble: Q fails the skew check, defect " + std::to_string(skew_defect));

  Matrix a(n);
  for (int i = 0; i < n; ++i) {
    const double ji = (i == 0) ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) {
      a(i, j) = ((i == j) ? gamma : 0.0) - ji * (psd_part(i, j) + skew_part(i, j));
    }
  }
  return a;
}

/// Recovers (gamma, P, Q) from a member; throws NotMember when the oracle
/// rejects.  Reassembling the triple reproduces A to 1e-10 relative Frobenius.
inline ZDecomposition z_decompose(const Matrix& a, const Tolerances& tol = {}) {
  ZCertificate cert = z_oracle_lorentz(a, tol);
  if (!cert.member)
    throw NotMember("z_decompose: spectral slack " + std::to_string(cert.lambda_min_at_star));
  return *std::move(cert.decomposition);
}

/// Forward generator: gamma uniform on [-10, 10], P = G G^T, Q the skew part
/// of a Gaussian draw.  Every output is accepted by z_oracle_lorentz.
inline Matrix sample_z_lorentz(int n, rng::Engine& eng) {
  const double gamma = rng::uniform(eng, -10.0, 10.0);
  const Matrix g = rng::gaussian_matrix(n, eng);
  const Matrix p = g * g.transposed();
  const Matrix q = sym_skew_split(rng::gaussian_matrix(n, eng)).skew;
  return z_assemble(gamma, p, q);
}

/// Z-matrix test for the nonnegative orthant: off-diagonal entries nonpositive
/// within eps_zero * max(1, ||A||_F).
inline bool z_oracle_orthant(const Matrix& a, const Tolerances& tol = {}) {
  const double eps = tol.eps_zero * std::max(1.0, a.frobenius_norm());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j && a(i, j) > eps) return false;
  return true;
}

/// Random Z-matrix: Gaussian diagonal, nonpositive half-Gaussian off-diagonal.
inline Matrix sample_z_orthant(int n, rng::Engine& eng) {
  Matrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = (i == j) ? rng::gaussian(eng) : -std::abs(rng::gaussian(eng));
  return a;
}

/// Orthant complementary pair: a random support subset carries x, the
/// complementary subset carries y, with half-Gaussian magnitudes.
inline std::pair<Vector, Vector> sample_orthant_pair(int n, rng::Engine& eng) {
  Vector x(static_cast<std::size_t>(n), 0.0);
  Vector y(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const bool to_x = rng::uniform(eng, 0.0, 1.0) < 0.5;
    const double mag = std::abs(rng::gaussian(eng));
    if (to_x)
      x[static_cast<std::size_t>(i)] = mag;
    else
      y[static_cast<std::size_t>(i)] = mag;
  }
  return {std::move(x), std::move(y)};
}

/// Monte-Carlo test of the defining property: samples complementary pairs and
/// returns the largest normalized value of <Ax, y>, where the normalization is
/// max(1, ||A||_F * ||x|| * ||y||).  Pair t draws from the substream
/// (seed, cone, t), so the result does not depend on evaluation order.
inline double z_definitional_test(const Matrix& a, Cone cone, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error("z_definitional_test: trials must be >= 1");
  const int n = a.dim();
  const double a_norm = a.frobenius_norm();
  const std::uint64_t stream = (cone == Cone::Lorentz) ? 0x10c1ull : 0x0c7aull;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    rng::Engine eng = rng::engine(seed, stream, static_cast<std::uint64_t>(t));
    Vector x, y;
    if (cone == Cone::Lorentz) {
      CompPair pair = sample_complementary_pair(n, eng);
      x = std::move(pair.x);
      y = std::move(pair.y);
    } else {
      auto pair = sample_orthant_pair(n, eng);
      x = std::move(pair.first);
      y = std::move(pair.second);
    }
    const double v = inner(a * x, y) / std::max(1.0, a_norm * norm(x) * norm(y));
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace conez
