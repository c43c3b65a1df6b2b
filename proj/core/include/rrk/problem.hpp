#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "rrk/errors.hpp"

namespace rrk {

/// Vector-valued right-hand side f(t, x, z) of a constant-lag delay equation
///   x'(t) = f(t, x(t), x(t - tau)).
/// Writes d components into `out`. Must be a pure function of its arguments;
/// the solvers may call it concurrently from several trial threads.
using Rhs = std::function<void(double t, std::span<const double> x,
                               std::span<const double> z,
                               std::span<double> out)>;

/// Initial segment phi(t) on [-tau, 0]. Writes d components into `out`.
using Initial = std::function<void(double t, std::span<double> out)>;

/// Scalar shorthands for one-dimensional problems.
using ScalarRhs = std::function<double(double t, double x, double z)>;
using ScalarInitial = std::function<double(double t)>;

/// Quantitative regularity data for a problem, used to form a priori bounds
/// and predicted convergence orders. All fields describe the right-hand side
/// f and the initial segment phi:
///   - alpha: Hoelder exponent of f in the delayed argument, in (0, 1].
///   - gamma: Hoelder exponent of f in time, in (0, 1].
///   - lipschitz: Lipschitz constant L of f in the non-delayed state and of
///     phi; also the constant in the time-Hoelder modulus L(1+|x|+|z|)|dt|^g.
///   - bound: a constant Kbar with |f(t,0,0)| <= Kbar.
///   - growth: optional constant K with |f(t,x,z)| <= K(1+|x|)(1+|z|).
///     When absent, K = Kbar + L is used, which is valid whenever alpha <= 1.
struct Regularity {
  double alpha = 1.0;
  double gamma = 1.0;
  double lipschitz = 0.0;
  double bound = 0.0;
  std::optional<double> growth{};
  /// Sup norm of the initial segment, max over [-tau, 0] of |phi|.
  double initial_sup = 0.0;

  /// Growth constant K actually used by the bound recursion.
  [[nodiscard]] double growth_constant() const {
    return growth ? *growth : bound + lipschitz;
  }
};

/// A constant-lag delay problem on the horizon [0, (n+1) tau]:
///   x'(t) = f(t, x(t), x(t - tau)),  t in [0, (n+1) tau],
///   x(t)  = phi(t),                  t in [-tau, 0].
/// The horizon is expressed as a number of whole lag intervals n+1 so the
/// method of steps applies exactly.
class DdeProblem {
 public:
  /// Throws std::invalid_argument unless tau > 0 and finite, n_intervals >= 0,
  /// dim >= 1, and both callables are non-empty. Regularity fields, when
  /// present, must satisfy alpha, gamma in (0, 1] and nonnegative constants.
  DdeProblem(Rhs rhs, Initial initial, double tau, int n_intervals, int dim,
             std::optional<Regularity> regularity = std::nullopt);

  /// Wraps scalar callables into the vector interface with dim = 1.
  static DdeProblem scalar(ScalarRhs rhs, ScalarInitial initial, double tau,
                           int n_intervals,
                           std::optional<Regularity> regularity = std::nullopt);

  [[nodiscard]] const Rhs& rhs() const noexcept { return rhs_; }
  [[nodiscard]] const Initial& initial() const noexcept { return initial_; }
  [[nodiscard]] double tau() const noexcept { return tau_; }
  [[nodiscard]] int n_intervals() const noexcept { return n_intervals_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const std::optional<Regularity>& regularity() const noexcept {
    return regularity_;
  }

  /// End of the integration horizon, (n+1) tau.
  [[nodiscard]] double horizon() const noexcept {
    return (n_intervals_ + 1) * tau_;
  }

 private:
  Rhs rhs_;
  Initial initial_;
  double tau_;
  int n_intervals_;
  int dim_;
  std::optional<Regularity> regularity_;
};

/// Counts right-hand-side evaluations across a solve.
struct EvalCounter {
  std::uint64_t count = 0;
};

/// Evaluates f(t, x, z) into `out`, bumping `counter` if given.
/// Throws EvaluationError if any output component is non-finite.
void evaluate_rhs(const DdeProblem& problem, double t,
                  std::span<const double> x, std::span<const double> z,
                  std::span<double> out, EvalCounter* counter = nullptr);

/// Evaluates phi(t) into `out` for t in [-tau, 0]. Arguments within a few
/// ulp outside the segment (as produced by grid arithmetic at the segment
/// ends) are clamped; anything further out throws std::invalid_argument.
void evaluate_initial(const DdeProblem& problem, double t,
                      std::span<double> out);

}  // namespace rrk
