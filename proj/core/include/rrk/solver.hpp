#pragma once

#include <span>
#include <vector>

#include "rrk/grid.hpp"
#include "rrk/problem.hpp"
#include "rrk/rng.hpp"
#include "rrk/trajectory.hpp"

namespace rrk {

/// Randomized two-stage Runge-Kutta solver for
///   x'(t) = f(t, x(t), x(t - tau)),  x = phi on [-tau, 0],
/// on the uniform method-of-steps grid with n_steps steps per lag interval.
///
/// Each step k of interval j draws one uniform gamma and advances
///   h' = h gamma,  theta = t_k^j + h',
///   ytilde^j     = y_k^j + h' f(t_k^j,     y_k^j,     y_k^{j-1}),
///   ytilde^{j-1} = y_k^{j-1} + h' f(t_k^{j-1}, y_k^{j-1}, y_k^{j-2}),
///   y_{k+1}^j    = y_k^j + h f(theta, ytilde^j, ytilde^{j-1}),
/// where on the first interval (j = 0) the delayed stage is evaluated
/// exactly from the initial segment, ytilde^{-1} = phi(t_k^{-1} + h'),
/// and y_k^{-1} = phi(t_k^{-1}). The same draw feeds both stages of a step.
/// Intervals are joined by assignment, y_0^j = y_N^{j-1}, so the randomized
/// evaluation points never leak across interval boundaries.
///
/// The returned trajectory records every state, every draw, and the exact
/// number of right-hand-side evaluations: N(3n + 2) for n = n_intervals.
///
/// Throws SolverError with the failing (interval, step) if an evaluation
/// returns a non-finite value or a stage or step result becomes non-finite.
[[nodiscard]] Trajectory rrk_solve(const DdeProblem& problem, int n_steps,
                                   DrawSource& draws);

/// Randomized Euler baseline on the same grid: one draw and one evaluation
/// per step,
///   y_{k+1}^j = y_k^j + h f(t_k^j + h gamma, y_k^j, z_k^j),
/// with the frozen delayed argument z_k^j = y_k^{j-1} (the sampled initial
/// segment when j = 0). Total evaluations: N(n + 1).
[[nodiscard]] Trajectory euler_solve(const DdeProblem& problem, int n_steps,
                                     DrawSource& draws);

/// One step of the scheme on the first lag interval, exposed for direct
/// testing. `y` is y_k^0; the result y_{k+1}^0 is written to `out`.
/// Evaluates f twice and the initial segment twice.
void rrk_step_first_interval(const DdeProblem& problem, const UniformGrid& grid,
                             int k, std::span<const double> y, double gamma,
                             std::span<double> out);

/// One step of the scheme on interval j >= 1. `y` is y_k^j, `y_prev` is
/// y_k^{j-1}, and `y_prev2` is y_k^{j-2} (the sampled initial segment when
/// j = 1). Evaluates f three times.
void rrk_step_later_interval(const DdeProblem& problem, const UniformGrid& grid,
                             int interval, int k, std::span<const double> y,
                             std::span<const double> y_prev,
                             std::span<const double> y_prev2, double gamma,
                             std::span<double> out);

}  // namespace rrk
