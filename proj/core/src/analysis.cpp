#include "rrk/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace rrk {

AnalysisBounds a_priori_bounds(double growth_k, double initial_sup, double tau,
                               int n_intervals) {
  if (!(growth_k >= 0.0) || !std::isfinite(growth_k)) {
    throw std::invalid_argument("growth constant must be nonnegative");
  }
  if (!(initial_sup >= 0.0) || !std::isfinite(initial_sup)) {
    throw std::invalid_argument("initial sup norm must be nonnegative");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("lag tau must be positive and finite");
  }
  if (n_intervals < 0) {
    throw std::invalid_argument("interval count must be nonnegative");
  }

  AnalysisBounds bounds;
  bounds.k_seq.reserve(static_cast<std::size_t>(n_intervals) + 2);
  bounds.lipschitz_seq.reserve(static_cast<std::size_t>(n_intervals) + 1);
  bounds.k_seq.push_back(initial_sup);
  for (int j = 0; j <= n_intervals; ++j) {
    const double prev = bounds.k_seq.back();
    // All factors are >= 1, so overflow saturates to +Inf without NaN.
    const double kj =
        (1.0 + prev) * (1.0 + growth_k * tau) * std::exp((1.0 + prev) * growth_k * tau);
    const double lj = (1.0 + prev) * (1.0 + kj) * growth_k;
    bounds.k_seq.push_back(kj);
    bounds.lipschitz_seq.push_back(lj);
    if (std::isinf(kj) || std::isinf(lj)) {
      bounds.saturated = true;
    }
  }
  return bounds;
}

std::optional<AnalysisBounds> bounds_for(const DdeProblem& problem) {
  const auto& reg = problem.regularity();
  if (!reg) {
    return std::nullopt;
  }
  return a_priori_bounds(reg->growth_constant(), reg->initial_sup,
                         problem.tau(), problem.n_intervals());
}

double theoretical_order(double alpha, double gamma, int interval) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("exponents must lie in (0, 1]");
  }
  if (interval < 0) {
    throw std::invalid_argument("interval must be nonnegative");
  }
  return std::pow(alpha, interval) * (0.5 + std::min(alpha, gamma));
}

BoundCheckReport check_trajectory_bound(const Trajectory& trajectory,
                                        const AnalysisBounds& bounds) {
  const int n = trajectory.grid().n_intervals;
  if (bounds.k_seq.size() != static_cast<std::size_t>(n) + 2) {
    throw std::invalid_argument(
        "bounds were built for a different number of lag intervals");
  }
  BoundCheckReport report;
  report.all_pass = true;
  report.intervals.reserve(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    IntervalBoundCheck check;
    check.interval = j;
    check.sup_norm = trajectory.interval_sup_norm(j);
    check.bound = bounds.k_seq[static_cast<std::size_t>(j) + 1];
    check.pass = check.sup_norm <= check.bound;
    report.all_pass = report.all_pass && check.pass;
    report.intervals.push_back(check);
  }
  return report;
}

}  // namespace rrk
