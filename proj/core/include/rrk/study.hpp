#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rrk/problem.hpp"
#include "rrk/trajectory.hpp"

namespace rrk {

enum class Method { rrk, euler };

[[nodiscard]] const char* method_name(Method method);

/// How the deviation from the reference is reduced over a lag interval:
/// the maximum over the interval's grid nodes, or the value at its right
/// endpoint only.
enum class ErrorMetric { max_over_grid, terminal };

/// Trial index reserved for reference solutions. Ordinary Monte Carlo
/// trials use indices 0..trials-1, so reference draws never collide with
/// trial draws under any seed.
inline constexpr std::uint64_t kReferenceTrial =
    std::numeric_limits<std::uint64_t>::max();

/// Steps per lag interval that realize h = 2^-h_exponent, i.e.
/// tau * 2^h_exponent. Throws std::invalid_argument unless that is a
/// positive whole number (up to rounding slack of one part in 1e9).
[[nodiscard]] int steps_for_h_exponent(double tau, int h_exponent);

/// Reference trajectory: the randomized two-stage solver at
/// h = 2^-ref_exponent, driven by the dedicated reference substreams
/// (trial index kReferenceTrial). Deterministic in (problem, exponent, seed).
[[nodiscard]] Trajectory compute_reference(const DdeProblem& problem,
                                           int ref_exponent,
                                           std::uint64_t seed);

/// Per-interval deviation between a coarse trajectory and a reference on a
/// nested grid (same tau, same interval count, reference step count an
/// integer multiple of the coarse one). Distances are Euclidean; element j
/// of the result covers lag interval j.
[[nodiscard]] std::vector<double> interval_error(const Trajectory& coarse,
                                                 const Trajectory& reference,
                                                 ErrorMetric metric);

struct ErrorEstimate {
  /// L^p average over successful trials, one entry per lag interval;
  /// NaN when every trial failed.
  std::vector<double> per_interval;
  int trials_requested = 0;
  int trials_used = 0;
  int failures = 0;
  /// Summed wall-clock time of the trial solves, including failed ones.
  double wall_time_s = 0.0;
};

/// Monte Carlo error estimate of `method` at h = 2^-h_exponent:
///   err_j = (mean over successful trials of dev_j^p)^(1/p),
/// with dev_j the interval_error against `reference`. Trial i always draws
/// from substreams (seed, i, *), so every method and step size sees the
/// same randomness trial for trial. Failed trials are counted and excluded.
/// `jobs` threads split the trials; accumulation is compensated and runs in
/// trial order, so results are bit-identical for every jobs value.
[[nodiscard]] ErrorEstimate estimate_error_norm(
    const DdeProblem& problem, Method method, int h_exponent,
    const Trajectory& reference, int trials, double p, ErrorMetric metric,
    std::uint64_t seed, int jobs = 1);

struct StudyConfig {
  std::vector<int> h_exponents;
  int ref_exponent = 13;
  int trials = 200;
  double p = 2.0;
  ErrorMetric metric = ErrorMetric::max_over_grid;
  std::uint64_t seed = 0;
  std::vector<Method> methods{Method::rrk};
  int jobs = 1;
};

/// One (method, step size, lag interval) cell of a study. theory_order and
/// k_bound are NaN when the problem carries no regularity data.
struct StudyRow {
  Method method = Method::rrk;
  int h_exponent = 0;
  double h = 0.0;
  int interval = 0;
  double error = 0.0;
  double p = 2.0;
  int trials = 0;  // trials that entered the average
  int failures = 0;
  double theory_order = 0.0;
  double k_bound = 0.0;
  double wall_time_s = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square deviation of the fitted line in log2 space.
  double residual = 0.0;
  int points_used = 0;
};

/// Observed order per (method, interval); degenerate when fewer than two
/// usable points remained, in which case slope and residual are NaN.
struct SlopeRow {
  Method method = Method::rrk;
  int interval = 0;
  double slope = 0.0;
  double residual = 0.0;
  double theory_order = 0.0;
  int points_used = 0;
  bool degenerate = false;
};

struct StudyResult {
  StudyConfig config;
  std::vector<StudyRow> rows;
  std::vector<SlopeRow> slopes;
  /// True when some (method, h) cell lost every trial to solver failures.
  bool any_all_failed = false;
};

/// Full convergence study: one shared reference, then an error estimate for
/// every method and step-size exponent, then least-squares orders. Rows are
/// ordered methods-outer, exponents-inner, intervals-innermost; slopes are
/// ordered methods-outer, intervals-inner.
[[nodiscard]] StudyResult run_study(const DdeProblem& problem,
                                    const StudyConfig& config);

/// Least-squares slope of log2(err) against log2(h). Pairs with nonpositive
/// or non-finite entries are dropped; nullopt when fewer than two points
/// remain or all remaining h coincide.
[[nodiscard]] std::optional<FitResult> fit_order(std::span<const double> h,
                                                 std::span<const double> err);

}  // namespace rrk
