#pragma once

namespace rrk {

/// Uniform mesh for the method of steps: each lag interval [j tau, (j+1) tau]
/// carries n_steps steps of size h = tau / n_steps, and the node
/// t_k^j = j tau + k h for k = 0..n_steps. Interval j = -1 is the initial
/// segment [-tau, 0]; intervals j = 0..n_intervals cover the horizon.
struct UniformGrid {
  double tau;
  int n_steps;
  int n_intervals;
  double h;

  [[nodiscard]] double node(int k, int interval) const noexcept {
    return interval * tau + k * h;
  }
};

/// Throws std::invalid_argument unless tau > 0 and finite, n_steps >= 1,
/// and n_intervals >= 0.
[[nodiscard]] UniformGrid build_grid(double tau, int n_steps, int n_intervals);

}  // namespace rrk
