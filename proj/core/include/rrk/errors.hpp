#pragma once

#include <stdexcept>
#include <string>

namespace rrk {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A right-hand-side evaluation returned a non-finite value (NaN or Inf).
/// Carries the time argument; the offending state is in the message.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double t) : Error(what), t_(t) {}

  [[nodiscard]] double time() const noexcept { return t_; }

 private:
  double t_;
};

/// A solver step produced a non-finite state. Carries the location of the
/// failing step: the lag interval index j and the step index k within it.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, int interval, int step)
      : Error(what), interval_(interval), step_(step) {}

  [[nodiscard]] int interval() const noexcept { return interval_; }
  [[nodiscard]] int step() const noexcept { return step_; }

 private:
  int interval_;
  int step_;
};

}  // namespace rrk
