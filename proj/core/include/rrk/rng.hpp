#pragma once

#include <cstdint>

namespace rrk {

/// Counter-based uniform stream over (0, 1).
///
/// Each draw is a pure function of (master_seed, trial, interval, counter),
/// so any draw can be produced at any time, in any order, on any thread,
/// without touching shared state. This is what makes reference solutions,
/// Monte Carlo trials, and per-interval substreams reproducible regardless
/// of scheduling: stream identity is data, not iteration history.
///
/// The generator applies the SplitMix64 output permutation to a Weyl
/// sequence over the counter; the stream base is derived by feeding seed,
/// trial, and interval through the same permutation. Draws are mapped to
/// the open interval (0, 1) as 53-bit midpoints, so 0 and 1 never occur.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t trial,
               std::uint64_t interval);

  /// Draw at an explicit counter; does not advance the stream.
  [[nodiscard]] double value_at(std::uint64_t counter) const;

  /// Draw at the current counter, then advance. next() called i times from a
  /// fresh stream yields exactly value_at(0), ..., value_at(i-1).
  double next();

  [[nodiscard]] std::uint64_t master_seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t trial() const noexcept { return trial_; }
  [[nodiscard]] std::uint64_t interval() const noexcept { return interval_; }
  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
  std::uint64_t interval_;
  std::uint64_t counter_ = 0;
  std::uint64_t base_;
};

/// Stream for lag interval `interval` of Monte Carlo trial `trial`.
[[nodiscard]] RandomStream substream(std::uint64_t master_seed,
                                     std::uint64_t trial,
                                     std::uint64_t interval);

/// Single uniform draw from a stream, advancing it.
double draw_uniform(RandomStream& stream);

/// Source of the per-step uniforms gamma consumed by the randomized solvers.
/// `step` is the zero-based step index k within lag interval `interval`;
/// the solvers request each (interval, step) pair exactly once.
class DrawSource {
 public:
  virtual ~DrawSource() = default;
  virtual double gamma(int interval, int step) = 0;
};

/// Draws for one Monte Carlo trial: gamma(j, k) is the k-th value of
/// substream(seed, trial, j). Stateless between calls, safe to reuse.
class TrialDraws final : public DrawSource {
 public:
  TrialDraws(std::uint64_t master_seed, std::uint64_t trial)
      : seed_(master_seed), trial_(trial) {}

  double gamma(int interval, int step) override;

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
};

/// Returns the same fixed value for every step. Useful for collapsing the
/// randomized schemes onto their deterministic counterparts in tests.
class ConstantDraws final : public DrawSource {
 public:
  explicit ConstantDraws(double value) : value_(value) {}

  double gamma(int, int) override { return value_; }

 private:
  double value_;
};

/// Trial draws with a single (interval, step) entry overridden. Used to
/// probe that a state never depends on draws taken after it.
class PerturbedDraws final : public DrawSource {
 public:
  PerturbedDraws(std::uint64_t master_seed, std::uint64_t trial,
                 int perturbed_interval, int perturbed_step, double value)
      : inner_(master_seed, trial),
        interval_(perturbed_interval),
        step_(perturbed_step),
        value_(value) {}

  double gamma(int interval, int step) override {
    if (interval == interval_ && step == step_) {
      return value_;
    }
    return inner_.gamma(interval, step);
  }

 private:
  TrialDraws inner_;
  int interval_;
  int step_;
  double value_;
};

}  // namespace rrk
