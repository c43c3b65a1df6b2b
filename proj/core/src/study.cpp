#include "rrk/study.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rrk/analysis.hpp"
#include "rrk/rng.hpp"
#include "rrk/solver.hpp"

namespace rrk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Compensated (Kahan) accumulator. Summation order is part of the output
/// contract, so the harness always adds in trial order.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double distance(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

double seconds_between(std::chrono::steady_clock::time_point a,
                       std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

}  // namespace

const char* method_name(Method method) {
  return method == Method::rrk ? "rrk" : "euler";
}

int steps_for_h_exponent(double tau, int h_exponent) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be positive and finite");
  }
  const double steps = std::ldexp(tau, h_exponent);
  const double rounded = std::nearbyint(steps);
  if (!(rounded >= 1.0) || rounded > 1e9 ||
      std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
    throw std::invalid_argument(
        "tau * 2^h_exponent must be a positive whole number of steps");
  }
  return static_cast<int>(rounded);
}

Trajectory compute_reference(const DdeProblem& problem, int ref_exponent,
                             std::uint64_t seed) {
  TrialDraws draws(seed, kReferenceTrial);
  return rrk_solve(problem, steps_for_h_exponent(problem.tau(), ref_exponent),
                   draws);
}

std::vector<double> interval_error(const Trajectory& coarse,
                                   const Trajectory& reference,
                                   ErrorMetric metric) {
  const UniformGrid& cg = coarse.grid();
  const UniformGrid& rg = reference.grid();
  if (cg.n_intervals != rg.n_intervals || coarse.dim() != reference.dim() ||
      cg.tau != rg.tau) {
    throw std::invalid_argument(
        "coarse and reference trajectories describe different problems");
  }
  if (rg.n_steps % cg.n_steps != 0) {
    throw std::invalid_argument(
        "reference grid does not nest the coarse grid");
  }
  const int ratio = rg.n_steps / cg.n_steps;
  std::vector<double> out(static_cast<std::size_t>(cg.n_intervals) + 1, 0.0);
  for (int j = 0; j <= cg.n_intervals; ++j) {
    if (metric == ErrorMetric::terminal) {
      out[static_cast<std::size_t>(j)] =
          distance(coarse.state(cg.n_steps, j),
                   reference.state(rg.n_steps, j));
    } else {
      double worst = 0.0;
      for (int k = 0; k <= cg.n_steps; ++k) {
        worst = std::max(
            worst, distance(coarse.state(k, j), reference.state(k * ratio, j)));
      }
      out[static_cast<std::size_t>(j)] = worst;
    }
  }
  return out;
}

ErrorEstimate estimate_error_norm(const DdeProblem& problem, Method method,
                                  int h_exponent, const Trajectory& reference,
                                  int trials, double p, ErrorMetric metric,
                                  std::uint64_t seed, int jobs) {
  if (trials < 1) {
    throw std::invalid_argument("need at least one trial");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p must be a finite value >= 1");
  }
  if (jobs < 1) {
    throw std::invalid_argument("jobs must be at least 1");
  }
  const int n_steps = steps_for_h_exponent(problem.tau(), h_exponent);
  const int n_intervals = problem.n_intervals();
  const std::size_t stride = static_cast<std::size_t>(n_intervals) + 1;

  std::vector<double> errors(static_cast<std::size_t>(trials) * stride, 0.0);
  std::vector<char> failed(static_cast<std::size_t>(trials), 0);
  std::vector<double> seconds(static_cast<std::size_t>(trials), 0.0);

  auto run_trial = [&](int i) {
    TrialDraws draws(seed, static_cast<std::uint64_t>(i));
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Trajectory traj = method == Method::rrk
                                  ? rrk_solve(problem, n_steps, draws)
                                  : euler_solve(problem, n_steps, draws);
      seconds[static_cast<std::size_t>(i)] =
          seconds_between(t0, std::chrono::steady_clock::now());
      const auto devs = interval_error(traj, reference, metric);
      std::copy(devs.begin(), devs.end(),
                errors.begin() + static_cast<std::size_t>(i) * stride);
    } catch (const Error&) {
      seconds[static_cast<std::size_t>(i)] =
          seconds_between(t0, std::chrono::steady_clock::now());
      failed[static_cast<std::size_t>(i)] = 1;
    }
  };

  if (jobs == 1 || trials == 1) {
    for (int i = 0; i < trials; ++i) {
      run_trial(i);
    }
  } else {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= trials) {
          return;
        }
        try {
          run_trial(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const int workers = std::min(jobs, trials);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
    if (first_error) {
      std::rethrow_exception(first_error);
    }
  }

  ErrorEstimate est;
  est.trials_requested = trials;
  est.per_interval.assign(stride, kNaN);
  int used = 0;
  for (int i = 0; i < trials; ++i) {
    if (!failed[static_cast<std::size_t>(i)]) {
      ++used;
    }
  }
  est.trials_used = used;
  est.failures = trials - used;
  if (used > 0) {
    for (std::size_t j = 0; j < stride; ++j) {
      KahanSum acc;
      for (int i = 0; i < trials; ++i) {
        if (failed[static_cast<std::size_t>(i)]) {
          continue;
        }
        acc.add(std::pow(errors[static_cast<std::size_t>(i) * stride + j], p));
      }
      est.per_interval[j] = std::pow(acc.sum / used, 1.0 / p);
    }
  }
  KahanSum wall;
  for (int i = 0; i < trials; ++i) {
    wall.add(seconds[static_cast<std::size_t>(i)]);
  }
  est.wall_time_s = wall.sum;
  return est;
}

std::optional<FitResult> fit_order(std::span<const double> h,
                                   std::span<const double> err) {
  if (h.size() != err.size()) {
    throw std::invalid_argument("fit needs matching h and error lengths");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] > 0.0 && std::isfinite(h[i]) && err[i] > 0.0 &&
        std::isfinite(err[i])) {
      xs.push_back(std::log2(h[i]));
      ys.push_back(std::log2(err[i]));
    }
  }
  const std::size_t m = xs.size();
  if (m < 2) {
    return std::nullopt;
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) {
    return std::nullopt;
  }
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(m));
  fit.points_used = static_cast<int>(m);
  return fit;
}

StudyResult run_study(const DdeProblem& problem, const StudyConfig& config) {
  if (config.h_exponents.empty()) {
    throw std::invalid_argument("study needs at least one step size");
  }
  if (config.methods.empty()) {
    throw std::invalid_argument("study needs at least one method");
  }
  for (int l : config.h_exponents) {
    if (l > config.ref_exponent) {
      throw std::invalid_argument(
          "reference step size must not exceed any study step size");
    }
  }

  const Trajectory reference =
      compute_reference(problem, config.ref_exponent, config.seed);
  const auto& reg = problem.regularity();
  const auto bounds = bounds_for(problem);

  StudyResult result;
  result.config = config;
  const int n_intervals = problem.n_intervals();
  for (Method method : config.methods) {
    for (int l : config.h_exponents) {
      const ErrorEstimate est = estimate_error_norm(
          problem, method, l, reference, config.trials, config.p,
          config.metric, config.seed, config.jobs);
      if (est.trials_used == 0) {
        result.any_all_failed = true;
      }
      for (int j = 0; j <= n_intervals; ++j) {
        StudyRow row;
        row.method = method;
        row.h_exponent = l;
        row.h = std::ldexp(1.0, -l);
        row.interval = j;
        row.error = est.per_interval[static_cast<std::size_t>(j)];
        row.p = config.p;
        row.trials = est.trials_used;
        row.failures = est.failures;
        row.theory_order =
            reg ? theoretical_order(reg->alpha, reg->gamma, j) : kNaN;
        row.k_bound =
            bounds ? bounds->k_seq[static_cast<std::size_t>(j) + 1] : kNaN;
        row.wall_time_s = est.wall_time_s;
        result.rows.push_back(row);
      }
    }
  }

  for (Method method : config.methods) {
    for (int j = 0; j <= n_intervals; ++j) {
      std::vector<double> hs;
      std::vector<double> errs;
      for (const StudyRow& row : result.rows) {
        if (row.method == method && row.interval == j) {
          hs.push_back(row.h);
          errs.push_back(row.error);
        }
      }
      const auto fit = fit_order(hs, errs);
      SlopeRow slope;
      slope.method = method;
      slope.interval = j;
      slope.slope = fit ? fit->slope : kNaN;
      slope.residual = fit ? fit->residual : kNaN;
      slope.theory_order =
          reg ? theoretical_order(reg->alpha, reg->gamma, j) : kNaN;
      slope.points_used = fit ? fit->points_used : 0;
      slope.degenerate = !fit.has_value();
      result.slopes.push_back(slope);
    }
  }
  return result;
}

}  // namespace rrk
