#include "rrk/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace rrk {

UniformGrid build_grid(double tau, int n_steps, int n_intervals) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("grid lag tau must be positive and finite");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("grid needs at least one step per interval");
  }
  if (n_intervals < 0) {
    throw std::invalid_argument("grid needs a nonnegative interval count");
  }
  return UniformGrid{tau, n_steps, n_intervals, tau / n_steps};
}

}  // namespace rrk
