#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <map>

#include "conez/lorentz.hpp"
#include "conez/rng.hpp"

using namespace conez;

TEST_CASE("membership regions") {
  REQUIRE(lorentz_member({2.0, 1.0, 1.0}) == Region::Interior);
  REQUIRE(lorentz_member({5.0, 3.0, 4.0}) == Region::Boundary);
  REQUIRE(lorentz_member({0.5, 1.0, 0.0}) == Region::Outside);
  REQUIRE(lorentz_member({-1.0, 0.0, 0.0}) == Region::Outside);
  REQUIRE(lorentz_member({0.0, 0.0, 0.0}) == Region::Boundary);
  // n = 1: the cone is the nonnegative half line.
  REQUIRE(lorentz_member({3.0}) == Region::Interior);
  REQUIRE(lorentz_member({-3.0}) == Region::Outside);
  REQUIRE(lorentz_member({0.0}) == Region::Boundary);
}

TEST_CASE("reflection matrix") {
  const Matrix j = reflection_matrix(3);
  REQUIRE(j(0, 0) == 1.0);
  REQUIRE(j(1, 1) == -1.0);
  REQUIRE(j(2, 2) == -1.0);
  REQUIRE(j(0, 1) == 0.0);
  REQUIRE((j * j) == Matrix::identity(3));
}

TEST_CASE("projection onto the cone") {
  SECTION("interior points are fixed") {
    const Vector z{2.0, 1.0, 0.0};
    REQUIRE(lorentz_project(z) == z);
  }
  SECTION("the polar cone maps to zero") {
    REQUIRE(lorentz_project({-2.0, 1.0, 0.0}) == Vector{0.0, 0.0, 0.0});
  }
  SECTION("outside points land on the boundary") {
    const Vector p = lorentz_project({0.0, 2.0, 0.0});
    REQUIRE(p[0] == Catch::Approx(1.0));
    REQUIRE(p[1] == Catch::Approx(1.0));
    REQUIRE(p[2] == 0.0);
    REQUIRE(lorentz_member(p) != Region::Outside);
  }
  SECTION("projection is the nearest cone point") {
    auto eng = rng::engine(31);
    for (int t = 0; t < 200; ++t) {
      const Vector z = rng::gaussian_vector(4, eng);
      const Vector p = lorentz_project(z);
      REQUIRE(lorentz_member(p) != Region::Outside);
      // No sampled cone point may be closer than the projection.
      Vector w = lorentz_project(rng::gaussian_vector(4, eng));
      double dz = 0.0, dw = 0.0;
      for (int i = 0; i < 4; ++i) {
        dz += (z[i] - p[i]) * (z[i] - p[i]);
        dw += (z[i] - w[i]) * (z[i] - w[i]);
      }
      REQUIRE(dz <= dw + 1e-12);
    }
  }
}

TEST_CASE("complementarity check on fixed pairs") {
  // Boundary ray and its reflection: inside C(L).
  const Vector x{5.0, 3.0, 4.0};
  const Vector y{5.0, -3.0, -4.0};
  const PairCheck ok = complementarity_check(x, y);
  REQUIRE(ok.in_c);
  REQUIRE(ok.reason == PairDefect::None);
  REQUIRE(std::abs(ok.inner_product) <= 1e-9);

  // Same ray twice: orthogonality fails.
  const PairCheck not_orth = complementarity_check(x, x);
  REQUIRE_FALSE(not_orth.in_c);
  REQUIRE(not_orth.reason == PairDefect::NotOrthogonal);
  REQUIRE(not_orth.inner_product == Catch::Approx(50.0));

  // First argument outside the cone.
  const PairCheck xout = complementarity_check({0.0, 1.0, 0.0}, y);
  REQUIRE_FALSE(xout.in_c);
  REQUIRE(xout.reason == PairDefect::XOutside);

  // Second argument outside the cone.
  const PairCheck yout = complementarity_check(Vector{0.0, 0.0, 0.0}, Vector{-1.0, 0.0, 0.0});
  REQUIRE_FALSE(yout.in_c);
  REQUIRE(yout.reason == PairDefect::YOutside);

  REQUIRE_THROWS_AS(complementarity_check({1.0, 0.0}, {1.0, 0.0, 0.0}), DimensionMismatch);
}

TEST_CASE("sampled pairs always satisfy the check and cover every class") {
  auto eng = rng::engine(32);
  std::map<PairClass, int> seen;
  for (int t = 0; t < 2000; ++t) {
    const CompPair pr = sample_complementary_pair(4, eng);
    ++seen[pr.cls];
    const PairCheck chk = complementarity_check(pr.x, pr.y);
    INFO("class " << to_string(pr.cls) << " trial " << t);
    REQUIRE(chk.in_c);
    if (pr.cls == PairClass::BoundaryPair) {
      REQUIRE(lorentz_member(pr.x) == Region::Boundary);
      REQUIRE(lorentz_member(pr.y) == Region::Boundary);
      REQUIRE(norm(pr.x) > 0.0);
      REQUIRE(norm(pr.y) > 0.0);
    }
    if (pr.cls == PairClass::LeftZero) REQUIRE(norm(pr.x) == 0.0);
    if (pr.cls == PairClass::RightZero) REQUIRE(norm(pr.y) == 0.0);
    if (pr.cls == PairClass::BothZero) {
      REQUIRE(norm(pr.x) == 0.0);
      REQUIRE(norm(pr.y) == 0.0);
    }
  }
  // With the default 0.7/0.1/0.1/0.1 mix, 2000 draws hit all four classes.
  REQUIRE(seen.size() == 4);
  REQUIRE(seen[PairClass::BoundaryPair] > 1000);
}

TEST_CASE("custom mixes steer the classes") {
  auto eng = rng::engine(33);
  PairMix only_zero{0.0, 0.0, 0.0, 1.0};
  for (int t = 0; t < 20; ++t)
    REQUIRE(sample_complementary_pair(3, eng, only_zero).cls == PairClass::BothZero);
  PairMix bad{0.0, 0.0, 0.0, 0.0};
  REQUIRE_THROWS_AS(sample_complementary_pair(3, eng, bad), Error);
}

TEST_CASE("n = 1 degenerates to one-sided zeros") {
  auto eng = rng::engine(34);
  for (int t = 0; t < 200; ++t) {
    const CompPair pr = sample_complementary_pair(1, eng);
    REQUIRE(pr.cls != PairClass::BoundaryPair);
    REQUIRE(complementarity_check(pr.x, pr.y).in_c);
    REQUIRE(pr.x[0] * pr.y[0] == 0.0);
  }
}

TEST_CASE("point classification carries the margin") {
  const ConePoint p = classify_point({5.0, 3.0, 4.0});
  REQUIRE(p.classification == Region::Boundary);
  REQUIRE(p.x == Vector{5.0, 3.0, 4.0});
  const ConePoint q = classify_point({2.0, 0.0, 0.0});
  REQUIRE(q.classification == Region::Interior);
}
