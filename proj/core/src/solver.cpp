#include "rrk/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace rrk {

namespace {

/// Reused across all steps of a solve; the hot loop does not allocate.
struct StepScratch {
  std::vector<double> stage;        // ytilde^j
  std::vector<double> delay_stage;  // ytilde^{j-1}
  std::vector<double> rate;         // latest f value
  std::vector<double> delay_now;    // phi(t_k^{-1}) on the first interval

  explicit StepScratch(int dim)
      : stage(dim), delay_stage(dim), rate(dim), delay_now(dim) {}
};

void require_finite(std::span<const double> v, const char* what, int interval,
                    int k) {
  for (double a : v) {
    if (!std::isfinite(a)) {
      std::ostringstream msg;
      msg << what << " became non-finite at interval j = " << interval
          << ", step k = " << k;
      throw SolverError(msg.str(), interval, k);
    }
  }
}

[[noreturn]] void rethrow_at(const EvaluationError& e, int interval, int k) {
  std::ostringstream msg;
  msg << e.what() << " (interval j = " << interval << ", step k = " << k << ")";
  throw SolverError(msg.str(), interval, k);
}

void axpy(std::span<const double> y, double c, std::span<const double> rate,
          std::span<double> out) {
  for (std::size_t d = 0; d < out.size(); ++d) {
    out[d] = y[d] + c * rate[d];
  }
}

void first_interval_step(const DdeProblem& problem, const UniformGrid& grid,
                         int k, std::span<const double> y, double gamma,
                         std::span<double> out, StepScratch& s,
                         EvalCounter* counter) {
  try {
    const double h = grid.h;
    const double hp = h * gamma;
    const double t = grid.node(k, 0);
    const double t_init = grid.node(k, -1);
    evaluate_initial(problem, t_init, s.delay_now);
    evaluate_rhs(problem, t, y, s.delay_now, s.rate, counter);
    axpy(y, hp, s.rate, s.stage);
    evaluate_initial(problem, t_init + hp, s.delay_stage);
    require_finite(s.stage, "stage", 0, k);
    require_finite(s.delay_stage, "delayed stage", 0, k);
    evaluate_rhs(problem, t + hp, s.stage, s.delay_stage, s.rate, counter);
    axpy(y, h, s.rate, out);
    require_finite(out, "state", 0, k);
  } catch (const EvaluationError& e) {
    rethrow_at(e, 0, k);
  }
}

void later_interval_step(const DdeProblem& problem, const UniformGrid& grid,
                         int interval, int k, std::span<const double> y,
                         std::span<const double> y_prev,
                         std::span<const double> y_prev2, double gamma,
                         std::span<double> out, StepScratch& s,
                         EvalCounter* counter) {
  try {
    const double h = grid.h;
    const double hp = h * gamma;
    const double t = grid.node(k, interval);
    const double t_prev = grid.node(k, interval - 1);
    evaluate_rhs(problem, t_prev, y_prev, y_prev2, s.rate, counter);
    axpy(y_prev, hp, s.rate, s.delay_stage);
    evaluate_rhs(problem, t, y, y_prev, s.rate, counter);
    axpy(y, hp, s.rate, s.stage);
    require_finite(s.stage, "stage", interval, k);
    require_finite(s.delay_stage, "delayed stage", interval, k);
    evaluate_rhs(problem, t + hp, s.stage, s.delay_stage, s.rate, counter);
    axpy(y, h, s.rate, out);
    require_finite(out, "state", interval, k);
  } catch (const EvaluationError& e) {
    rethrow_at(e, interval, k);
  }
}

/// Samples phi onto interval -1. The last node is evaluated at exactly 0 so
/// the junction states are bit-identical to phi(0).
void sample_initial_column(const DdeProblem& problem, Trajectory& traj) {
  const int N = traj.grid().n_steps;
  for (int k = 0; k <= N; ++k) {
    const double t = (k == N) ? 0.0 : traj.time(k, -1);
    evaluate_initial(problem, t, traj.state(k, -1));
  }
}

/// Joins interval `interval` to its predecessor by assignment.
void copy_junction(Trajectory& traj, int interval) {
  const auto src = traj.state(traj.grid().n_steps, interval - 1);
  std::copy(src.begin(), src.end(), traj.state(0, interval).begin());
}

}  // namespace

Trajectory rrk_solve(const DdeProblem& problem, int n_steps,
                     DrawSource& draws) {
  const UniformGrid grid =
      build_grid(problem.tau(), n_steps, problem.n_intervals());
  Trajectory traj(grid, problem.dim());
  EvalCounter evals;
  StepScratch scratch(problem.dim());

  sample_initial_column(problem, traj);
  for (int j = 0; j <= grid.n_intervals; ++j) {
    copy_junction(traj, j);
    for (int k = 0; k < grid.n_steps; ++k) {
      const double gamma = draws.gamma(j, k);
      traj.gamma_draw(k, j) = gamma;
      if (j == 0) {
        first_interval_step(problem, grid, k, traj.state(k, 0), gamma,
                            traj.state(k + 1, 0), scratch, &evals);
      } else {
        later_interval_step(problem, grid, j, k, traj.state(k, j),
                            traj.state(k, j - 1), traj.state(k, j - 2), gamma,
                            traj.state(k + 1, j), scratch, &evals);
      }
    }
  }
  traj.set_f_evals(evals.count);
  return traj;
}

Trajectory euler_solve(const DdeProblem& problem, int n_steps,
                       DrawSource& draws) {
  const UniformGrid grid =
      build_grid(problem.tau(), n_steps, problem.n_intervals());
  Trajectory traj(grid, problem.dim());
  EvalCounter evals;
  StepScratch scratch(problem.dim());

  sample_initial_column(problem, traj);
  for (int j = 0; j <= grid.n_intervals; ++j) {
    copy_junction(traj, j);
    for (int k = 0; k < grid.n_steps; ++k) {
      const double gamma = draws.gamma(j, k);
      traj.gamma_draw(k, j) = gamma;
      const double theta = grid.node(k, j) + grid.h * gamma;
      try {
        evaluate_rhs(problem, theta, traj.state(k, j), traj.state(k, j - 1),
                     scratch.rate, &evals);
      } catch (const EvaluationError& e) {
        rethrow_at(e, j, k);
      }
      axpy(traj.state(k, j), grid.h, scratch.rate, traj.state(k + 1, j));
      require_finite(traj.state(k + 1, j), "state", j, k);
    }
  }
  traj.set_f_evals(evals.count);
  return traj;
}

void rrk_step_first_interval(const DdeProblem& problem, const UniformGrid& grid,
                             int k, std::span<const double> y, double gamma,
                             std::span<double> out) {
  assert(static_cast<int>(y.size()) == problem.dim());
  assert(static_cast<int>(out.size()) == problem.dim());
  StepScratch scratch(problem.dim());
  first_interval_step(problem, grid, k, y, gamma, out, scratch, nullptr);
}

void rrk_step_later_interval(const DdeProblem& problem, const UniformGrid& grid,
                             int interval, int k, std::span<const double> y,
                             std::span<const double> y_prev,
                             std::span<const double> y_prev2, double gamma,
                             std::span<double> out) {
  assert(interval >= 1);
  assert(static_cast<int>(y.size()) == problem.dim());
  StepScratch scratch(problem.dim());
  later_interval_step(problem, grid, interval, k, y, y_prev, y_prev2, gamma,
                      out, scratch, nullptr);
}

}  // namespace rrk
