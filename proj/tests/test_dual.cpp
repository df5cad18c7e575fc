#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <limits>

#include "conez/dual.hpp"
#include "conez/eigen.hpp"
#include "conez/lorentz.hpp"
#include "conez/rng.hpp"

using namespace conez;

TEST_CASE("dual membership of reference matrices") {
  SECTION("the boundary dyad [[-1,-1],[1,1]]") {
    const DualCertificate c = dual_oracle_lorentz(Matrix::from_rows({{-1.0, -1.0}, {1.0, 1.0}}));
    REQUIRE(c.member);
    REQUIRE(c.trace_residual == 0.0);
    REQUIRE(c.sym_defect <= 1e-12);
    REQUIRE(std::abs(c.lambda_max_jb) <= 1e-12);
  }
  SECTION("minus the reflection at n = 2") {
    REQUIRE(dual_oracle_lorentz(Matrix::from_rows({{-1.0, 0.0}, {0.0, 1.0}})).member);
  }
  SECTION("the reflection itself is not a member") {
    const DualCertificate c = dual_oracle_lorentz(Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}));
    REQUIRE_FALSE(c.member);
    REQUIRE(c.lambda_max_jb == Catch::Approx(1.0));
  }
  SECTION("the identity fails on trace") {
    const DualCertificate c = dual_oracle_lorentz(Matrix::identity(3));
    REQUIRE_FALSE(c.member);
    REQUIRE(c.trace_residual == 3.0);
  }
  SECTION("an asymmetric J*B fails on the symmetry defect") {
    // B = [[0,1],[1,0]]: trace 0, but JB = [[0,1],[-1,0]] is skew.
    const DualCertificate c = dual_oracle_lorentz(Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
    REQUIRE_FALSE(c.member);
    REQUIRE(c.sym_defect == Catch::Approx(2.0));
  }
  SECTION("zero is a member") {
    REQUIRE(dual_oracle_lorentz(Matrix(4)).member);
  }
  SECTION("minus the reflection at n = 3 fails: its trace is 3 - 2 = 1") {
    REQUIRE_FALSE(dual_oracle_lorentz(-1.0 * reflection_matrix(3)).member);
  }
}

TEST_CASE("psd-balanced construction") {
  auto eng = rng::engine(61);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 7;
    const Matrix g = rng::gaussian_matrix(n, eng);
    const Matrix b = dual_from_psd(g * g.transposed());
    const DualCertificate c = dual_oracle_lorentz(b);
    INFO("n = " << n << " trial " << t);
    REQUIRE(c.member);
    REQUIRE(std::abs(b.trace()) <= 1e-12 * std::max(1.0, b.frobenius_norm()));
  }
  // A matrix that already has zero J-trace is reflected untouched.
  const Matrix p0 = Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
  const Matrix b = dual_from_psd(p0);
  REQUIRE(b == Matrix::from_rows({{-1.0, 0.0}, {0.0, 1.0}}));
  // A 1x1 positive J-trace cannot be balanced.
  REQUIRE_THROWS_AS(dual_from_psd(Matrix::from_rows({{2.0}})), DimensionMismatch);
}

TEST_CASE("both generators emit members at every dimension") {
  auto eng = rng::engine(62);
  for (int n : {1, 2, 3, 5, 8}) {
    for (int t = 0; t < 25; ++t) {
      const Matrix b1 = sample_dual_lorentz(n, eng, DualKind::PsdBalanced);
      const Matrix b2 = sample_dual_lorentz(n, eng, DualKind::DyadSum);
      REQUIRE(dual_oracle_lorentz(b1).member);
      REQUIRE(dual_oracle_lorentz(b2).member);
    }
  }
  // n = 1: the dual cone degenerates to the origin.
  REQUIRE(sample_dual_lorentz(1, eng, DualKind::PsdBalanced) == Matrix(1));
}

TEST_CASE("dyad construction from vectors") {
  const Matrix d = dyad_from_pair({1.0, 2.0}, {3.0, 4.0});
  REQUIRE(d == Matrix::from_rows({{-3.0, -6.0}, {-4.0, -8.0}}));
  REQUIRE_THROWS_AS(dyad_from_pair({1.0}, {1.0, 2.0}), DimensionMismatch);
  REQUIRE_THROWS_AS(dyad_from_pair({}, {}), DimensionMismatch);
}

TEST_CASE("dyad factorization inverts dyad construction") {
  SECTION("the textbook example") {
    const Matrix b = Matrix::from_rows({{-1.0, -1.0}, {1.0, 1.0}});
    const auto [x, y] = dyad_factor(b);
    REQUIRE(x[0] == Catch::Approx(std::sqrt(0.5)).margin(1e-12));
    REQUIRE(x[1] == Catch::Approx(std::sqrt(0.5)).margin(1e-12));
    REQUIRE(y[0] == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    REQUIRE(y[1] == Catch::Approx(-std::sqrt(2.0)).margin(1e-12));
    REQUIRE((b - dyad_from_pair(x, y)).max_abs() <= 1e-12);
  }
  SECTION("random complementary pairs round trip") {
    auto eng = rng::engine(63);
    for (int t = 0; t < 80; ++t) {
      const int n = 1 + t % 8;
      const CompPair pr = sample_complementary_pair(n, eng);
      const Matrix b = dyad_from_pair(pr.x, pr.y);
      const auto [x, y] = dyad_factor(b);
      const PairCheck chk = complementarity_check(x, y);
      INFO("class " << to_string(pr.cls) << " n " << n);
      REQUIRE(chk.in_c);
      REQUIRE((b - dyad_from_pair(x, y)).frobenius_norm() <=
              1e-10 * std::max(1.0, b.frobenius_norm()));
      // The leading coordinate convention: x_1 >= 0.
      REQUIRE(x[0] >= 0.0);
    }
  }
  SECTION("non-members are refused") {
    REQUIRE_THROWS_AS(dyad_factor(reflection_matrix(2)), NotMember);
  }
  SECTION("rank-two members are refused") {
    // -J at n = 2 is a member but has two negative eigenvalues of JB.
    REQUIRE_THROWS_AS(dyad_factor(-1.0 * reflection_matrix(2)), NotRankOne);
  }
}

TEST_CASE("sum-cone and subspace dual identities on samples") {
  auto eng = rng::engine(64);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 5;
    const Matrix b =
        sample_dual_lorentz(n, eng, t % 2 == 0 ? DualKind::PsdBalanced : DualKind::DyadSum);
    const double scale = std::max(1.0, b.frobenius_norm());
    // -B^T J is the symmetric PSD witness behind membership.
    const Matrix j = reflection_matrix(n);
    const Matrix w = -1.0 * (b.transposed() * j);
    REQUIRE(detail::symmetry_defect(w) <= 1e-9 * scale);

    // Nonnegative pairing with sampled PSD matrices.
    const Matrix g = rng::gaussian_matrix(n, eng);
    const Matrix p = g * g.transposed();
    REQUIRE(trace_inner(p, w) >= -1e-9 * scale * p.frobenius_norm());

    // Vanishing pairing with sampled skew matrices.
    const Matrix q = sym_skew_split(rng::gaussian_matrix(n, eng)).skew;
    REQUIRE(std::abs(trace_inner(q, w)) <= 1e-9 * scale * std::max(1.0, q.frobenius_norm()));
  }
}

TEST_CASE("orthant dual oracle and generator") {
  REQUIRE(dual_oracle_orthant(Matrix::from_rows({{0.0, -1.0}, {0.0, 0.0}})));
  REQUIRE(dual_oracle_orthant(Matrix(3)));
  REQUIRE_FALSE(dual_oracle_orthant(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})));
  REQUIRE_FALSE(dual_oracle_orthant(Matrix::from_rows({{1e-3, 0.0}, {0.0, 0.0}})));

  auto eng = rng::engine(65);
  for (int t = 0; t < 100; ++t) {
    const Matrix b = sample_dual_orthant(1 + t % 6, eng);
    REQUIRE(dual_oracle_orthant(b));
    REQUIRE(b.trace() == 0.0);
  }
}

TEST_CASE("orthant duality pairing is nonnegative") {
  auto eng = rng::engine(66);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 6;
    const Matrix a = sample_z_orthant(n, eng);
    const Matrix b = sample_dual_orthant(n, eng);
    REQUIRE(trace_inner(a, b) >= -1e-12);
  }
}

TEST_CASE("non-finite input is rejected") {
  Matrix bad(2);
  bad.data()[0] = std::numeric_limits<double>::infinity();
  REQUIRE_THROWS_AS(dual_oracle_lorentz(bad), NonFinite);
}
