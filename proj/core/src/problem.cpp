#include "rrk/problem.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rrk {

namespace {

void validate_regularity(const Regularity& reg) {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_unit(reg.alpha) || !in_unit(reg.gamma)) {
    throw std::invalid_argument(
        "regularity exponents alpha, gamma must lie in (0, 1]");
  }
  if (!(reg.lipschitz >= 0.0) || !(reg.bound >= 0.0) ||
      !(reg.initial_sup >= 0.0)) {
    throw std::invalid_argument("regularity constants must be nonnegative");
  }
  if (reg.growth && !(*reg.growth >= 0.0)) {
    throw std::invalid_argument("growth constant must be nonnegative");
  }
}

}  // namespace

DdeProblem::DdeProblem(Rhs rhs, Initial initial, double tau, int n_intervals,
                       int dim, std::optional<Regularity> regularity)
    : rhs_(std::move(rhs)),
      initial_(std::move(initial)),
      tau_(tau),
      n_intervals_(n_intervals),
      dim_(dim),
      regularity_(std::move(regularity)) {
  if (!rhs_ || !initial_) {
    throw std::invalid_argument("problem callables must be non-empty");
  }
  if (!(tau_ > 0.0) || !std::isfinite(tau_)) {
    throw std::invalid_argument("lag tau must be positive and finite");
  }
  if (n_intervals_ < 0) {
    throw std::invalid_argument("n_intervals must be nonnegative");
  }
  if (dim_ < 1) {
    throw std::invalid_argument("state dimension must be at least 1");
  }
  if (regularity_) {
    validate_regularity(*regularity_);
  }
}

DdeProblem DdeProblem::scalar(ScalarRhs rhs, ScalarInitial initial, double tau,
                              int n_intervals,
                              std::optional<Regularity> regularity) {
  if (!rhs || !initial) {
    throw std::invalid_argument("problem callables must be non-empty");
  }
  Rhs vec_rhs = [f = std::move(rhs)](double t, std::span<const double> x,
                                     std::span<const double> z,
                                     std::span<double> out) {
    out[0] = f(t, x[0], z[0]);
  };
  Initial vec_initial = [phi = std::move(initial)](double t,
                                                   std::span<double> out) {
    out[0] = phi(t);
  };
  return DdeProblem(std::move(vec_rhs), std::move(vec_initial), tau,
                    n_intervals, 1, std::move(regularity));
}

void evaluate_rhs(const DdeProblem& problem, double t,
                  std::span<const double> x, std::span<const double> z,
                  std::span<double> out, EvalCounter* counter) {
  problem.rhs()(t, x, z, out);
  if (counter != nullptr) {
    ++counter->count;
  }
  for (double v : out) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "right-hand side returned a non-finite value at t = " << t
          << " with |x| component x[0] = " << (x.empty() ? 0.0 : x[0]);
      throw EvaluationError(msg.str(), t);
    }
  }
}

void evaluate_initial(const DdeProblem& problem, double t,
                      std::span<double> out) {
  const double tau = problem.tau();
  // Grid arithmetic can land a hair outside [-tau, 0] at the segment ends.
  const double slack =
      16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, tau);
  if (t > 0.0) {
    if (t > slack) {
      throw std::invalid_argument(
          "initial segment evaluated past t = 0");
    }
    t = 0.0;
  } else if (t < -tau) {
    if (t < -tau - slack) {
      throw std::invalid_argument(
          "initial segment evaluated before t = -tau");
    }
    t = -tau;
  }
  problem.initial()(t, out);
}

}  // namespace rrk
