#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rrk/analysis.hpp"
#include "rrk/problems.hpp"
#include "rrk/rng.hpp"
#include "rrk/solver.hpp"

TEST_CASE("bound recursion reproduces hand-computed values") {
  // K = 1, tau = 1, empty initial bound:
  //   K_0 = (1 + 0)(1 + 1) e^{1} = 2 e,  L_0 = (1 + 0)(1 + 2e) 1.
  const auto b = rrk::a_priori_bounds(1.0, 0.0, 1.0, 0);
  REQUIRE(b.k_seq.size() == 2);
  REQUIRE(b.lipschitz_seq.size() == 1);
  CHECK(b.k_seq[0] == 0.0);
  CHECK(b.k_seq[1] == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-15));
  CHECK(b.lipschitz_seq[0] ==
        doctest::Approx(1.0 + 2.0 * std::exp(1.0)).epsilon(1e-15));
  CHECK_FALSE(b.saturated);

  // Same constants with initial sup 1: K_0 = 2 * 2 * e^2 = 4 e^2.
  const auto b1 = rrk::a_priori_bounds(1.0, 1.0, 1.0, 0);
  CHECK(b1.k_seq[1] == doctest::Approx(4.0 * std::exp(2.0)).epsilon(1e-15));
}

TEST_CASE("bound recursion validates inputs") {
  CHECK_THROWS_AS((void)rrk::a_priori_bounds(-1.0, 0.0, 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)rrk::a_priori_bounds(1.0, -0.5, 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)rrk::a_priori_bounds(1.0, 0.0, 0.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)rrk::a_priori_bounds(1.0, 0.0, 1.0, -1),
                  std::invalid_argument);
}

TEST_CASE("bound sequences are monotone and never NaN") {
  const double ks[] = {0.0, 0.25, 1.0, 3.0};
  const double sups[] = {0.0, 1.0, 10.0};
  const double taus[] = {0.5, 1.0, 2.0};
  for (double k : ks) {
    for (double sup : sups) {
      for (double tau : taus) {
        const auto b = rrk::a_priori_bounds(k, sup, tau, 4);
        REQUIRE(b.k_seq.size() == 6);
        for (std::size_t j = 1; j < b.k_seq.size(); ++j) {
          CHECK_FALSE(std::isnan(b.k_seq[j]));
          CHECK(b.k_seq[j] >= b.k_seq[j - 1]);
        }
        for (double l : b.lipschitz_seq) {
          CHECK_FALSE(std::isnan(l));
          CHECK(l >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("fast-growing constants saturate to +Inf and are flagged") {
  // The Hoelder test equation's constants overflow from interval 1 on.
  const auto problem = rrk::example2(0.5, 0.5, 1.0);
  const auto b = rrk::bounds_for(problem);
  REQUIRE(b.has_value());
  CHECK(b->saturated);
  CHECK(std::isfinite(b->k_seq[1]));
  CHECK(std::isinf(b->k_seq[2]));
  CHECK(std::isinf(b->k_seq[3]));
  for (double v : b->k_seq) {
    CHECK_FALSE(std::isnan(v));
  }
}

TEST_CASE("bounds_for requires regularity data") {
  CHECK_FALSE(rrk::bounds_for(rrk::example1(0.5, 1.0)).has_value());
  CHECK(rrk::bounds_for(rrk::example2(0.5, 0.5, 1.0)).has_value());
}

TEST_CASE("predicted order compounds the delayed-argument exponent") {
  CHECK(rrk::theoretical_order(0.5, 1.0, 0) == 1.0);
  CHECK(rrk::theoretical_order(0.5, 0.5, 0) == 1.0);
  CHECK(rrk::theoretical_order(0.5, 0.5, 1) == 0.5);
  CHECK(rrk::theoretical_order(0.5, 0.5, 2) == 0.25);
  CHECK(rrk::theoretical_order(1.0, 1.0, 5) == 1.5);
  CHECK(rrk::theoretical_order(0.1, 0.1, 2) ==
        doctest::Approx(0.006).epsilon(1e-15));
  // The time exponent enters only through min(alpha, gamma).
  CHECK(rrk::theoretical_order(0.5, 0.2, 1) == 0.5 * 0.7);
  CHECK_THROWS_AS((void)rrk::theoretical_order(0.0, 0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)rrk::theoretical_order(0.5, 1.5, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)rrk::theoretical_order(0.5, 0.5, -1), std::invalid_argument);
}

TEST_CASE("trajectory bound check compares interval sup norms") {
  const auto spec = rrk::oracle_pure_delay(1.0, 2);
  rrk::TrialDraws draws(0, 0);
  const auto traj = rrk::rrk_solve(spec.problem, 64, draws);
  const auto bounds = rrk::bounds_for(spec.problem);
  REQUIRE(bounds.has_value());

  const auto report = rrk::check_trajectory_bound(traj, *bounds);
  REQUIRE(report.intervals.size() == 3);
  CHECK(report.all_pass);
  for (const auto& check : report.intervals) {
    CHECK(check.pass);
    CHECK(check.sup_norm <= check.bound);
    CHECK(check.sup_norm > 0.0);
  }
  // The numerical solution tracks the exact one, whose interval maxima are
  // the junction values 2, 3.5, 37/6.
  CHECK(report.intervals[0].sup_norm == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(report.intervals[1].sup_norm == doctest::Approx(3.5).epsilon(1e-3));
  CHECK(report.intervals[2].sup_norm ==
        doctest::Approx(37.0 / 6.0).epsilon(1e-3));
}

TEST_CASE("trajectory bound check fails when bounds are undershot") {
  const auto spec = rrk::oracle_pure_delay(1.0, 1);
  rrk::TrialDraws draws(0, 0);
  const auto traj = rrk::rrk_solve(spec.problem, 16, draws);
  // Deliberately too-small constants: K_j built from growth constant 0 caps
  // the solution by 1 + K_{j-1}, below the true maxima 2 and 3.5.
  auto weak = rrk::a_priori_bounds(0.0, 0.0, 1.0, 1);
  const auto report = rrk::check_trajectory_bound(traj, weak);
  CHECK_FALSE(report.all_pass);
  CHECK_FALSE(report.intervals[0].pass);
}

TEST_CASE("trajectory bound check rejects mismatched interval counts") {
  const auto spec = rrk::oracle_pure_delay(1.0, 2);
  rrk::TrialDraws draws(0, 0);
  const auto traj = rrk::rrk_solve(spec.problem, 8, draws);
  const auto other = rrk::a_priori_bounds(1.0, 1.0, 1.0, 3);
  CHECK_THROWS_AS((void)rrk::check_trajectory_bound(traj, other),
                  std::invalid_argument);
}

TEST_CASE("saturated bounds pass trivially") {
  const auto problem = rrk::example2(0.5, 0.5, 1.0);
  rrk::TrialDraws draws(0, 0);
  const auto traj = rrk::rrk_solve(problem, 64, draws);
  const auto bounds = rrk::bounds_for(problem);
  const auto report = rrk::check_trajectory_bound(traj, *bounds);
  CHECK(report.all_pass);
  CHECK(std::isinf(report.intervals[1].bound));
  CHECK(std::isfinite(report.intervals[1].sup_norm));
}
