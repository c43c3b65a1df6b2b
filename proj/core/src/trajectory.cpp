#include "rrk/trajectory.hpp"

#include <cmath>

namespace rrk {

Trajectory::Trajectory(const UniformGrid& grid, int dim)
    : grid_(grid),
      dim_(dim),
      values_(static_cast<std::size_t>(grid.n_intervals + 2) *
                  static_cast<std::size_t>(grid.n_steps + 1) *
                  static_cast<std::size_t>(dim),
              0.0),
      draws_(static_cast<std::size_t>(grid.n_intervals + 1) *
                 static_cast<std::size_t>(grid.n_steps),
             0.0) {}

double Trajectory::interval_sup_norm(int interval) const {
  double sup = 0.0;
  for (int k = 0; k <= grid_.n_steps; ++k) {
    const auto y = state(k, interval);
    double sq = 0.0;
    for (double v : y) {
      sq += v * v;
    }
    sup = std::max(sup, std::sqrt(sq));
  }
  return sup;
}

}  // namespace rrk
