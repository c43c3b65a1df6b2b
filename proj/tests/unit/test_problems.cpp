#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rrk/problems.hpp"
#include "rrk/rng.hpp"
#include "rrk/solver.hpp"

namespace {

double eval_scalar_rhs(const rrk::DdeProblem& p, double t, double x, double z) {
  const std::vector<double> xv{x};
  const std::vector<double> zv{z};
  std::vector<double> out{0.0};
  rrk::evaluate_rhs(p, t, xv, zv, out);
  return out[0];
}

double eval_exact(const rrk::ProblemSpec& spec, double t) {
  std::vector<double> out{0.0};
  (*spec.exact)(t, out);
  return out[0];
}

/// |x'(t) - f(t, x(t), x(t - tau))| via central differences, for probing
/// closed-form solutions on the smooth interior of a lag interval.
double defect(const rrk::ProblemSpec& spec, double t) {
  const double dt = 1e-6;
  const double deriv =
      (eval_exact(spec, t + dt) - eval_exact(spec, t - dt)) / (2.0 * dt);
  const double f = eval_scalar_rhs(spec.problem, t, eval_exact(spec, t),
                                   eval_exact(spec, t - spec.problem.tau()));
  return std::abs(deriv - f);
}

}  // namespace

TEST_CASE("sign-flip coefficient takes its documented values") {
  const double T = 3.0;
  // Before the first flip every sign term is positive, so g = -1.
  CHECK(rrk::sign_flip_coefficient(0.1 * T, T) == -1.0);
  // Between flips: at 0.3 T only the first term has flipped.
  CHECK(rrk::sign_flip_coefficient(0.3 * T, T) == doctest::Approx(-0.8));
  CHECK(rrk::sign_flip_coefficient(0.6 * T, T) == doctest::Approx(-0.4));
  // Past the last flip everything is positive: g = +1.
  CHECK(rrk::sign_flip_coefficient(0.99 * T, T) == 1.0);
  // At a flip time the flipping term contributes 0.
  CHECK(rrk::sign_flip_coefficient(T / 4.0, T) == doctest::Approx(-0.9));
  CHECK(rrk::sign_flip_coefficient(T / 2.0, T) == doctest::Approx(-0.6));
  CHECK(rrk::sign_flip_coefficient(3.0 * T / 4.0, T) == doctest::Approx(0.3));
}

TEST_CASE("sign-flip equation evaluates as defined") {
  const auto p = rrk::example1(0.5, 1.0);
  CHECK(p.n_intervals() == 2);
  CHECK(p.horizon() == 3.0);
  CHECK_FALSE(p.regularity().has_value());
  // t = 0.1: g = -1, so f = -(x + (1 + |z|)^alpha).
  CHECK(eval_scalar_rhs(p, 0.1, 1.0, 1.0) ==
        doctest::Approx(-(1.0 + std::sqrt(2.0))).epsilon(1e-15));
  CHECK(eval_scalar_rhs(p, 0.1, 0.0, 0.0) == -1.0);
  // Initial segment is identically 1.
  std::vector<double> out{0.0};
  rrk::evaluate_initial(p, -0.25, out);
  CHECK(out[0] == 1.0);
  CHECK_THROWS_AS((void)rrk::example1(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)rrk::example1(1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)rrk::example1(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("Hoelder equation evaluates as defined and carries regularity") {
  const auto p = rrk::example2(0.5, 0.5, 1.0);
  CHECK(eval_scalar_rhs(p, 0.25, 2.0, 4.0) == doctest::Approx(0.5));
  CHECK(eval_scalar_rhs(p, 0.0, 0.0, 0.0) == 0.0);
  std::vector<double> out{0.0};
  rrk::evaluate_initial(p, -1.0, out);
  CHECK(out[0] == 0.0);
  rrk::evaluate_initial(p, 0.0, out);
  CHECK(out[0] == 1.0);

  REQUIRE(p.regularity().has_value());
  const auto& reg = *p.regularity();
  CHECK(reg.alpha == 0.5);
  CHECK(reg.gamma == 0.5);
  CHECK(reg.lipschitz == 1.0);
  CHECK(reg.bound == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(reg.initial_sup == 1.0);
  CHECK(reg.growth_constant() ==
        doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-15));

  CHECK_THROWS_AS((void)rrk::example2(0.5, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)rrk::example2(2.0, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("Hoelder equation with alpha = gamma has solution e^t early on") {
  // On [0, tau] the delayed argument is phi(t - tau) = t, so with
  // alpha = gamma the driving terms cancel and u' = u with u(0) = 1.
  const auto p = rrk::example2(0.5, 0.5, 1.0);
  rrk::TrialDraws draws(0, 0);
  const auto traj = rrk::rrk_solve(p, 512, draws);
  for (int k = 0; k <= 512; k += 64) {
    const double t = traj.time(k, 0);
    CHECK(traj.scalar(k, 0) == doctest::Approx(std::exp(t)).epsilon(5e-4));
  }
}

TEST_CASE("pure delay closed form hits its junction values") {
  const auto spec = rrk::oracle_pure_delay(1.0, 2);
  CHECK(eval_exact(spec, -1.0) == 1.0);
  CHECK(eval_exact(spec, 0.0) == 1.0);
  CHECK(eval_exact(spec, 1.0) == 2.0);
  CHECK(eval_exact(spec, 1.5) == 2.625);
  CHECK(eval_exact(spec, 2.0) == 3.5);
  CHECK(eval_exact(spec, 3.0) == doctest::Approx(37.0 / 6.0).epsilon(1e-15));
  // Continuity across a junction.
  CHECK(eval_exact(spec, std::nextafter(2.0, 0.0)) ==
        doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("closed-form solutions satisfy their equations") {
  const rrk::ProblemSpec specs[] = {
      rrk::oracle_constant(2.5, 1.0, 2),
      rrk::oracle_pure_delay(1.0, 2),
      rrk::oracle_scalar_linear(0.8, 1.0, 2),
  };
  // Probe points in the smooth interior of each lag interval.
  for (const auto& spec : specs) {
    for (double t : {0.25, 0.75, 1.25, 1.8, 2.3, 2.9}) {
      CHECK(defect(spec, t) < 1e-4);
    }
  }
}

TEST_CASE("scalar linear solution is the exponential") {
  const auto spec = rrk::oracle_scalar_linear(2.0, 1.0, 1);
  CHECK(eval_exact(spec, -0.5) == 1.0);
  CHECK(eval_exact(spec, 1.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
}

TEST_CASE("registry builds problems by name") {
  rrk::ProblemOptions opts;
  opts.alpha = 0.5;
  opts.gamma = 0.1;
  opts.tau = 2.0;
  const auto spec = rrk::make_problem("example2", opts);
  CHECK(spec.name == "example2");
  CHECK(spec.problem.tau() == 2.0);
  CHECK_FALSE(spec.exact.has_value());
  REQUIRE(spec.parameters.size() == 3);
  CHECK(spec.parameters[0].first == "alpha");
  CHECK(spec.parameters[1].second == 0.1);

  opts.n_intervals = 4;
  opts.lambda = -1.0;
  const auto lin = rrk::make_problem("scalar-linear", opts);
  CHECK(lin.problem.n_intervals() == 4);
  CHECK(lin.exact.has_value());

  CHECK_THROWS_AS((void)rrk::make_problem("no-such-problem"), std::invalid_argument);
  // The fixed-horizon examples reject other interval counts.
  CHECK_THROWS_AS((void)rrk::make_problem("example1", opts), std::invalid_argument);
  CHECK_THROWS_AS((void)rrk::make_problem("example2", opts), std::invalid_argument);
}

TEST_CASE("registry listing names every problem once") {
  const auto infos = rrk::list_problems();
  REQUIRE(infos.size() == 5);
  const char* expected[] = {"constant", "pure-delay", "scalar-linear",
                            "example1", "example2"};
  for (std::size_t i = 0; i < infos.size(); ++i) {
    CHECK(infos[i].name == expected[i]);
    CHECK_FALSE(infos[i].summary.empty());
    // Every listed problem is constructible with defaults.
    CHECK_NOTHROW((void)rrk::make_problem(infos[i].name));
  }
  CHECK(infos[0].has_exact);
  CHECK_FALSE(infos[3].has_exact);
}
