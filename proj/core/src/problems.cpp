#include "rrk/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rrk {

namespace {

void require_unit_exponent(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
  }
}

void require_positive_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be positive and finite");
  }
}

double sgn(double v) { return v < 0.0 ? -1.0 : (v > 0.0 ? 1.0 : 0.0); }

}  // namespace

double sign_flip_coefficient(double t, double horizon) {
  const double q = horizon / 4.0;
  return -0.1 * sgn(q - t) - 0.2 * sgn(2.0 * q - t) - 0.7 * sgn(3.0 * q - t);
}

DdeProblem example1(double alpha, double tau) {
  require_unit_exponent(alpha, "alpha");
  require_positive_tau(tau);
  const double horizon = 3.0 * tau;
  ScalarRhs rhs = [alpha, horizon](double t, double x, double z) {
    return sign_flip_coefficient(t, horizon) *
           (x + std::pow(1.0 + std::abs(z), alpha));
  };
  ScalarInitial phi = [](double) { return 1.0; };
  return DdeProblem::scalar(std::move(rhs), std::move(phi), tau, 2);
}

DdeProblem example2(double alpha, double gamma, double tau) {
  require_unit_exponent(alpha, "alpha");
  require_unit_exponent(gamma, "gamma");
  require_positive_tau(tau);
  ScalarRhs rhs = [alpha, gamma](double t, double x, double z) {
    return x - std::pow(std::abs(z), alpha) + std::pow(std::abs(t), gamma);
  };
  ScalarInitial phi = [tau](double t) { return t + tau; };
  Regularity reg;
  reg.alpha = alpha;
  reg.gamma = gamma;
  reg.lipschitz = 1.0;
  reg.bound = std::pow(3.0 * tau, gamma);
  reg.initial_sup = tau;
  return DdeProblem::scalar(std::move(rhs), std::move(phi), tau, 2, reg);
}

ProblemSpec oracle_constant(double value, double tau, int n_intervals) {
  require_positive_tau(tau);
  ScalarRhs rhs = [](double, double, double) { return 0.0; };
  ScalarInitial phi = [value](double) { return value; };
  Regularity reg;
  reg.alpha = 1.0;
  reg.gamma = 1.0;
  reg.lipschitz = 0.0;
  reg.bound = 0.0;
  reg.initial_sup = std::abs(value);
  ProblemSpec spec{
      "constant",
      DdeProblem::scalar(std::move(rhs), std::move(phi), tau, n_intervals,
                         reg),
      ExactSolution([value](double, std::span<double> out) { out[0] = value; }),
      {{"value", value}, {"tau", tau}},
      "x' = 0, x = value on [-tau, 0]; solution constant to the last bit"};
  return spec;
}

ProblemSpec oracle_pure_delay(double tau, int n_intervals) {
  require_positive_tau(tau);
  ScalarRhs rhs = [](double, double, double z) { return z; };
  ScalarInitial phi = [](double) { return 1.0; };
  Regularity reg;
  reg.alpha = 1.0;
  reg.gamma = 1.0;
  reg.lipschitz = 1.0;
  reg.bound = 0.0;
  reg.initial_sup = 1.0;
  ExactSolution exact = [tau, n_intervals](double t, std::span<double> out) {
    int j = static_cast<int>(std::floor(t / tau));
    j = std::clamp(j, -1, n_intervals);
    double sum = 0.0;
    double factorial = 1.0;
    for (int i = 0; i <= j + 1; ++i) {
      if (i > 0) {
        factorial *= i;
      }
      sum += std::pow(t - (i - 1) * tau, i) / factorial;
    }
    out[0] = sum;
  };
  ProblemSpec spec{
      "pure-delay",
      DdeProblem::scalar(std::move(rhs), std::move(phi), tau, n_intervals,
                         reg),
      std::move(exact),
      {{"tau", tau}},
      "x' = x(t - tau), x = 1 on [-tau, 0]; piecewise-polynomial solution"};
  return spec;
}

ProblemSpec oracle_scalar_linear(double lambda, double tau, int n_intervals) {
  require_positive_tau(tau);
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be finite");
  }
  ScalarRhs rhs = [lambda](double, double x, double) { return lambda * x; };
  ScalarInitial phi = [](double) { return 1.0; };
  Regularity reg;
  reg.alpha = 1.0;
  reg.gamma = 1.0;
  reg.lipschitz = std::abs(lambda);
  reg.bound = 0.0;
  reg.initial_sup = 1.0;
  ExactSolution exact = [lambda](double t, std::span<double> out) {
    out[0] = t < 0.0 ? 1.0 : std::exp(lambda * t);
  };
  ProblemSpec spec{
      "scalar-linear",
      DdeProblem::scalar(std::move(rhs), std::move(phi), tau, n_intervals,
                         reg),
      std::move(exact),
      {{"lambda", lambda}, {"tau", tau}},
      "x' = lambda x, x = 1 on [-tau, 0]; solution exp(lambda t)"};
  return spec;
}

ProblemSpec make_problem(const std::string& name,
                         const ProblemOptions& options) {
  if (options.n_intervals < 0) {
    throw std::invalid_argument("n_intervals must be nonnegative");
  }
  if (name == "constant") {
    return oracle_constant(options.value, options.tau, options.n_intervals);
  }
  if (name == "pure-delay") {
    return oracle_pure_delay(options.tau, options.n_intervals);
  }
  if (name == "scalar-linear") {
    return oracle_scalar_linear(options.lambda, options.tau,
                                options.n_intervals);
  }
  if (name == "example1" || name == "example2") {
    if (options.n_intervals != 2) {
      throw std::invalid_argument(
          name + " is defined on exactly three lag intervals");
    }
    if (name == "example1") {
      return ProblemSpec{
          "example1",
          example1(options.alpha, options.tau),
          std::nullopt,
          {{"alpha", options.alpha}, {"tau", options.tau}},
          "u' = g(t) (u + (1 + |u(t - tau)|)^alpha) with a piecewise-constant "
          "sign-flip coefficient g"};
    }
    return ProblemSpec{
        "example2",
        example2(options.alpha, options.gamma, options.tau),
        std::nullopt,
        {{"alpha", options.alpha},
         {"gamma", options.gamma},
         {"tau", options.tau}},
        "u' = u - |u(t - tau)|^alpha + |t|^gamma"};
  }
  throw std::invalid_argument("unknown problem: " + name);
}

std::vector<ProblemInfo> list_problems() {
  return {
      {"constant",
       {"value", "tau", "n-taus"},
       true,
       "x' = 0, x = value on [-tau, 0]; solution constant to the last bit"},
      {"pure-delay",
       {"tau", "n-taus"},
       true,
       "x' = x(t - tau), x = 1 on [-tau, 0]; piecewise-polynomial solution"},
      {"scalar-linear",
       {"lambda", "tau", "n-taus"},
       true,
       "x' = lambda x, x = 1 on [-tau, 0]; solution exp(lambda t)"},
      {"example1",
       {"alpha", "tau"},
       false,
       "u' = g(t) (u + (1 + |u(t - tau)|)^alpha), sign-flip coefficient g"},
      {"example2",
       {"alpha", "gamma", "tau"},
       false,
       "u' = u - |u(t - tau)|^alpha + |t|^gamma"},
  };
}

}  // namespace rrk
