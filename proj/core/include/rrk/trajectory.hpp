#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "rrk/grid.hpp"

namespace rrk {

/// Numerical solution on a uniform method-of-steps grid. Stores the state at
/// every node t_k^j for j = -1..n_intervals (interval -1 holds the sampled
/// initial segment) and k = 0..n_steps, plus the uniform draw consumed by
/// each step and the total right-hand-side evaluation count of the solve.
class Trajectory {
 public:
  Trajectory(const UniformGrid& grid, int dim);

  [[nodiscard]] const UniformGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }

  /// State at node (k, interval), k = 0..n_steps, interval = -1..n_intervals.
  [[nodiscard]] std::span<double> state(int k, int interval) {
    return {values_.data() + state_offset(k, interval),
            static_cast<std::size_t>(dim_)};
  }
  [[nodiscard]] std::span<const double> state(int k, int interval) const {
    return {values_.data() + state_offset(k, interval),
            static_cast<std::size_t>(dim_)};
  }

  /// First component of the state; the common case for scalar problems.
  [[nodiscard]] double scalar(int k, int interval) const {
    return values_[state_offset(k, interval)];
  }

  [[nodiscard]] double time(int k, int interval) const noexcept {
    return grid_.node(k, interval);
  }

  /// Uniform draw gamma consumed by step k of `interval`, k = 0..n_steps-1,
  /// interval = 0..n_intervals.
  [[nodiscard]] double& gamma_draw(int k, int interval) {
    return draws_[draw_offset(k, interval)];
  }
  [[nodiscard]] double gamma_draw(int k, int interval) const {
    return draws_[draw_offset(k, interval)];
  }

  [[nodiscard]] std::uint64_t f_evals() const noexcept { return f_evals_; }
  void set_f_evals(std::uint64_t n) noexcept { f_evals_ = n; }

  /// Largest Euclidean state norm over the nodes of one interval.
  [[nodiscard]] double interval_sup_norm(int interval) const;

 private:
  [[nodiscard]] std::size_t state_offset(int k, int interval) const {
    assert(interval >= -1 && interval <= grid_.n_intervals);
    assert(k >= 0 && k <= grid_.n_steps);
    const std::size_t row = static_cast<std::size_t>(interval + 1) *
                                static_cast<std::size_t>(grid_.n_steps + 1) +
                            static_cast<std::size_t>(k);
    return row * static_cast<std::size_t>(dim_);
  }

  [[nodiscard]] std::size_t draw_offset(int k, int interval) const {
    assert(interval >= 0 && interval <= grid_.n_intervals);
    assert(k >= 0 && k < grid_.n_steps);
    return static_cast<std::size_t>(interval) *
               static_cast<std::size_t>(grid_.n_steps) +
           static_cast<std::size_t>(k);
  }

  UniformGrid grid_;
  int dim_;
  std::vector<double> values_;
  std::vector<double> draws_;
  std::uint64_t f_evals_ = 0;
};

}  // namespace rrk
