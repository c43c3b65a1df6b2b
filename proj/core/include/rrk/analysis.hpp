#pragma once

#include <optional>
#include <vector>

#include "rrk/problem.hpp"
#include "rrk/trajectory.hpp"

namespace rrk {

/// A priori bounds derived from the growth constant K, the lag tau, and the
/// sup norm of the initial segment. k_seq[0] is the initial-segment bound
/// K_{-1}; k_seq[j + 1] bounds the exact solution on lag interval j via the
/// recursion
///   K_j = (1 + K_{j-1}) (1 + K tau) exp((1 + K_{j-1}) K tau).
/// lipschitz_seq[j] = (1 + K_{j-1}) (1 + K_j) K is the Lipschitz constant of
/// the solution on interval j.
///
/// Fast-growing constants can overflow to +Inf; `saturated` flags that. The
/// sequences are monotone in exact arithmetic, and entries stay either
/// finite or +Inf (never NaN).
struct AnalysisBounds {
  std::vector<double> k_seq;
  std::vector<double> lipschitz_seq;
  bool saturated = false;
};

/// Bound recursion for n_intervals + 1 lag intervals. Throws
/// std::invalid_argument unless growth_k >= 0, initial_sup >= 0, tau > 0
/// and finite, and n_intervals >= 0.
[[nodiscard]] AnalysisBounds a_priori_bounds(double growth_k,
                                             double initial_sup, double tau,
                                             int n_intervals);

/// Bounds for a problem carrying regularity data; nullopt otherwise.
[[nodiscard]] std::optional<AnalysisBounds> bounds_for(
    const DdeProblem& problem);

/// Predicted convergence order of the randomized two-stage scheme on lag
/// interval j >= 0 for a right-hand side that is alpha-Hoelder in the
/// delayed argument and gamma-Hoelder in time:
///   alpha^j (1/2 + min(alpha, gamma)).
[[nodiscard]] double theoretical_order(double alpha, double gamma,
                                       int interval);

/// Result of checking one lag interval of a trajectory against its bound.
struct IntervalBoundCheck {
  int interval = 0;
  double sup_norm = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct BoundCheckReport {
  std::vector<IntervalBoundCheck> intervals;
  bool all_pass = false;
};

/// Compares the numerical sup norm of every lag interval j = 0..n against
/// K_j. A saturated (+Inf) bound passes trivially. Throws
/// std::invalid_argument if the bounds were built for a different interval
/// count than the trajectory.
[[nodiscard]] BoundCheckReport check_trajectory_bound(
    const Trajectory& trajectory, const AnalysisBounds& bounds);

}  // namespace rrk
