#include "catch2/catch_amalgamated.hpp"

#include <string>
#include <vector>

#include "conez/verify.hpp"

using namespace conez;

TEST_CASE("report serialization shape") {
  Report r{"duality", 3, 100, 0, -2.5e-12, 42, {}};
  const auto j = nlohmann::ordered_json::parse(report_line(r));

  // Keys, in exactly this order.
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  REQUIRE(keys == std::vector<std::string>{"suite", "n", "trials", "failures", "worst_violation",
                                           "seed", "status", "failure_samples"});

  REQUIRE(j["suite"] == "duality");
  REQUIRE(j["n"] == 3);
  REQUIRE(j["trials"] == 100);
  REQUIRE(j["failures"] == 0);
  REQUIRE(j["worst_violation"] == -2.5e-12);
  REQUIRE(j["seed"] == 42);
  REQUIRE(j["status"] == "Pass");
  REQUIRE(j["failure_samples"].is_array());
  REQUIRE(j["failure_samples"].empty());

  // One line, no embedded newline.
  REQUIRE(report_line(r).find('\n') == std::string::npos);
}

TEST_CASE("status follows the failure count and samples are capped at five") {
  Report r{"orthant", 2, 10, 0, 0.0, 7, {}};
  REQUIRE(report_json(r)["status"] == "Pass");
  for (int i = 0; i < 8; ++i)
    detail::add_failure(r, detail::matrix_failure(i, "synthetic", -1.0, Matrix::identity(2)));
  REQUIRE(r.failures == 8);
  REQUIRE(r.failure_samples.size() == 5);
  const auto j = report_json(r);
  REQUIRE(j["status"] == "Fail");
  REQUIRE(j["failure_samples"].size() == 5);
  REQUIRE(j["failure_samples"][0]["check"] == "synthetic");
  REQUIRE(j["failure_samples"][0]["input"][0][0] == 1.0);
}

TEST_CASE("planar closed forms on reference matrices") {
  SECTION("z form") {
    REQUIRE(n2_z_oracle_closedform(Matrix::from_rows({{-1.0, 0.0}, {0.0, 1.0}})));
    REQUIRE(n2_z_oracle_closedform(Matrix::identity(2)));
    REQUIRE_FALSE(n2_z_oracle_closedform(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})));
    // a - d = -2 beats -|b - c| = -1.
    REQUIRE(n2_z_oracle_closedform(Matrix::from_rows({{-1.0, 2.0}, {1.0, 1.0}})));
    REQUIRE_THROWS_AS(n2_z_oracle_closedform(Matrix::identity(3)), DimensionMismatch);
  }
  SECTION("dual form") {
    REQUIRE(n2_dual_oracle_closedform(Matrix::from_rows({{-1.0, -1.0}, {1.0, 1.0}})));
    REQUIRE(n2_dual_oracle_closedform(Matrix::from_rows({{-1.0, 0.0}, {0.0, 1.0}})));
    REQUIRE_FALSE(n2_dual_oracle_closedform(Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}})));
    REQUIRE(n2_dual_oracle_closedform(Matrix(2)));
    REQUIRE_THROWS_AS(n2_dual_oracle_closedform(Matrix::identity(1)), DimensionMismatch);
  }
  SECTION("closed forms agree with the spectral oracles on members") {
    auto eng = rng::engine(71);
    for (int t = 0; t < 100; ++t) {
      const Matrix a = sample_z_lorentz(2, eng);
      REQUIRE(n2_z_oracle_closedform(a) == z_oracle_lorentz(a).member);
      const Matrix b =
          sample_dual_lorentz(2, eng, t % 2 == 0 ? DualKind::PsdBalanced : DualKind::DyadSum);
      REQUIRE(n2_dual_oracle_closedform(b) == dual_oracle_lorentz(b).member);
    }
  }
}

TEST_CASE("suites pass at the contract dimensions") {
  for (int n : {2, 3, 4, 8}) {
    INFO("n = " << n);
    REQUIRE(suite_duality(n, 400, 7).pass());
    REQUIRE(suite_definitional(n, 400, 7).pass());
    REQUIRE(suite_orlitzky(n, 200, 7).pass());
    REQUIRE(suite_orthant(n, 400, 7).pass());
  }
  const auto n2 = suite_n2_closedform(2000, 7);
  REQUIRE(n2[0].pass());
  REQUIRE(n2[1].pass());
}

TEST_CASE("suite metadata is faithful") {
  const Report r = suite_duality(4, 50, 99);
  REQUIRE(r.suite == "duality");
  REQUIRE(r.n == 4);
  REQUIRE(r.trials == 50);
  REQUIRE(r.seed == 99);

  const auto n2 = suite_n2_closedform(50, 5);
  REQUIRE(n2[0].suite == "n2-z");
  REQUIRE(n2[1].suite == "n2-dual");
  REQUIRE(n2[0].n == 2);
  REQUIRE(n2[1].n == 2);
}

TEST_CASE("suites reject bad arguments") {
  REQUIRE_THROWS_AS(suite_duality(3, 0, 1), Error);
  REQUIRE_THROWS_AS(suite_definitional(0, 10, 1), DimensionMismatch);
  REQUIRE_THROWS_AS(suite_orlitzky(3, -1, 1), Error);
  REQUIRE_THROWS_AS(suite_n2_closedform(0, 1), Error);
  REQUIRE_THROWS_AS(suite_orthant(3, 0, 1), Error);
  REQUIRE_THROWS_AS(run_suites("nonsense", 3, 10, 1), Error);
}

TEST_CASE("identical seeds reproduce identical reports, bit for bit") {
  for (const char* which : {"duality", "definitional", "orlitzky", "n2", "orthant"}) {
    const auto a = run_suites(which, 3, 60, 12345);
    const auto b = run_suites(which, 3, 60, 12345);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      INFO(which << " report " << i);
      REQUIRE(report_line(a[i]) == report_line(b[i]));
    }
  }
  // Different seeds genuinely move the numbers.
  const Report r1 = suite_orlitzky(3, 60, 1);
  const Report r2 = suite_orlitzky(3, 60, 2);
  REQUIRE(r1.worst_violation != r2.worst_violation);
}

TEST_CASE("run_suites dispatch") {
  const auto all = run_suites("all", 2, 40, 6);
  REQUIRE(all.size() == 6);
  REQUIRE(all[0].suite == "duality");
  REQUIRE(all[1].suite == "definitional");
  REQUIRE(all[2].suite == "orlitzky");
  REQUIRE(all[3].suite == "n2-z");
  REQUIRE(all[4].suite == "n2-dual");
  REQUIRE(all[5].suite == "orthant");
  for (const auto& r : all) REQUIRE(r.pass());

  REQUIRE(run_suites("n2", 5, 40, 6).size() == 2);
  REQUIRE(run_suites("duality", 5, 40, 6).size() == 1);
}

TEST_CASE("worst violations look like their suites") {
  // Duality and orthant report signed pairings; a healthy run stays clear of
  // the -1e-9 failure line.
  REQUIRE(suite_duality(3, 200, 8).worst_violation > -1e-9);
  REQUIRE(suite_orthant(3, 200, 8).worst_violation >= 0.0);
  // The orlitzky residual is a norm, hence nonnegative and tiny.
  const double resid = suite_orlitzky(3, 200, 8).worst_violation;
  REQUIRE(resid >= 0.0);
  REQUIRE(resid <= 1e-10);
  // Definitional reports the worst normalized <Ax, y> over members.
  REQUIRE(suite_definitional(3, 200, 8).worst_violation <= 1e-9);
}
