#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rrk/problem.hpp"

namespace rrk {

/// Exact solution x(t) on [-tau, (n+1) tau], written into `out`.
using ExactSolution = std::function<void(double t, std::span<double> out)>;

/// A named problem instance: the equation, its resolved parameters, and an
/// exact solution when one is known in closed form.
struct ProblemSpec {
  std::string name;
  DdeProblem problem;
  std::optional<ExactSolution> exact;
  std::vector<std::pair<std::string, double>> parameters;
  std::string summary;
};

/// Piecewise-constant coefficient of the sign-flip test equation: three
/// overlaid sign terms that flip at the quarter points of the horizon
/// [0, 3 tau], with sign(0) = 0 at the flip times themselves.
[[nodiscard]] double sign_flip_coefficient(double t, double horizon);

/// Sign-flip test equation on [0, 3 tau]:
///   u'(t) = g(t) (u(t) + (1 + |u(t - tau)|)^alpha),  u = 1 on [-tau, 0],
/// where g is sign_flip_coefficient. The coefficient jumps in t, so no
/// regularity data is attached. Requires alpha in (0, 1].
[[nodiscard]] DdeProblem example1(double alpha, double tau);

/// Hoelder test equation on [0, 3 tau]:
///   u'(t) = u(t) - |u(t - tau)|^alpha + |t|^gamma,  u(t) = t + tau
/// on [-tau, 0]. Carries full regularity data: Lipschitz constant 1,
/// |f(t,0,0)| <= (3 tau)^gamma, initial sup norm tau. Requires alpha and
/// gamma in (0, 1].
[[nodiscard]] DdeProblem example2(double alpha, double gamma, double tau);

/// x' = 0 with constant initial value. The solution stays exactly at
/// `value`, to the last bit, under both solvers.
[[nodiscard]] ProblemSpec oracle_constant(double value, double tau,
                                          int n_intervals);

/// x'(t) = x(t - tau) with x = 1 on [-tau, 0]. The solution is the
/// polynomial sum_{i=0}^{j+1} (t - (i-1) tau)^i / i! on lag interval j.
/// On the first interval the randomized two-stage scheme is exact for
/// every draw.
[[nodiscard]] ProblemSpec oracle_pure_delay(double tau, int n_intervals);

/// x' = lambda x with x = 1 on [-tau, 0]; solution exp(lambda t). No actual
/// delay dependence, so it isolates the time-stepping error.
[[nodiscard]] ProblemSpec oracle_scalar_linear(double lambda, double tau,
                                               int n_intervals);

/// Parameters accepted by the registry. Each problem reads the subset it
/// understands and ignores the rest.
struct ProblemOptions {
  double alpha = 0.5;
  double gamma = 0.5;
  double tau = 1.0;
  double lambda = 1.0;
  double value = 1.0;
  int n_intervals = 2;
};

/// Builds a registered problem by name: "constant", "pure-delay",
/// "scalar-linear", "example1", "example2". Throws std::invalid_argument for
/// unknown names or parameter values a problem rejects (example1 and
/// example2 are defined on exactly three lag intervals).
[[nodiscard]] ProblemSpec make_problem(const std::string& name,
                                       const ProblemOptions& options = {});

struct ProblemInfo {
  std::string name;
  std::vector<std::string> parameter_names;
  bool has_exact = false;
  std::string summary;
};

/// Registry listing in registration order.
[[nodiscard]] std::vector<ProblemInfo> list_problems();

}  // namespace rrk
