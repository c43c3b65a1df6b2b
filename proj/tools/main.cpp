#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rrk/rrk.hpp"

namespace {

/// Shortest decimal form that still round-trips, for config echoes.
std::string compact(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Inclusive exponent range "A..B", a single value "A", or a comma list.
std::vector<int> parse_exponents(const std::string& text) {
  std::vector<int> out;
  const auto parse_int = [](const std::string& s) {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument("bad exponent '" + s + "'");
    }
    return v;
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int a = parse_int(text.substr(0, dots));
    const int b = parse_int(text.substr(dots + 2));
    if (b < a) {
      throw std::invalid_argument("exponent range must be ascending");
    }
    for (int l = a; l <= b; ++l) {
      out.push_back(l);
    }
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    out.push_back(parse_int(item));
  }
  if (out.empty()) {
    throw std::invalid_argument("no step-size exponents given");
  }
  return out;
}

struct ProblemFlags {
  std::string problem = "example2";
  double alpha = 0.5;
  double gamma = 0.5;
  double tau = 1.0;
  double lambda = 1.0;
  double value = 1.0;
  int n_taus = 3;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& f) {
  cmd->add_option("problem_name", f.problem,
                  "Problem name; `rrk problems` lists them");
  cmd->add_option("--problem", f.problem, "Problem name, as a flag")
      ->capture_default_str();
  cmd->add_option("--alpha", f.alpha,
                  "Hoelder exponent of the delayed argument, in (0, 1]")
      ->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "Hoelder exponent in time, in (0, 1]")
      ->capture_default_str();
  cmd->add_option("--tau", f.tau, "Lag length")->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "Rate of the scalar-linear problem")
      ->capture_default_str();
  cmd->add_option("--value", f.value, "Level of the constant problem")
      ->capture_default_str();
  cmd->add_option("--n-taus", f.n_taus,
                  "Horizon as a whole number of lags; the built-in examples "
                  "require 3")
      ->capture_default_str();
}

rrk::ProblemSpec build_problem(const ProblemFlags& f) {
  if (f.n_taus < 1) {
    throw std::invalid_argument("--n-taus must be at least 1");
  }
  rrk::ProblemOptions opts;
  opts.alpha = f.alpha;
  opts.gamma = f.gamma;
  opts.tau = f.tau;
  opts.lambda = f.lambda;
  opts.value = f.value;
  opts.n_intervals = f.n_taus - 1;
  return rrk::make_problem(f.problem, opts);
}

rrk::ConfigEcho problem_echo(const rrk::ProblemSpec& spec, int n_taus) {
  rrk::ConfigEcho echo{{"problem", spec.name}};
  for (const auto& [key, value] : spec.parameters) {
    echo.emplace_back(key, compact(value));
  }
  echo.emplace_back("n_taus", std::to_string(n_taus));
  return echo;
}

void print_echo(std::ostream& os, const rrk::ConfigEcho& echo) {
  bool first = true;
  for (const auto& [key, value] : echo) {
    os << (first ? "" : " ") << key << "=" << value;
    first = false;
  }
  os << "\n";
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  return file;
}

std::vector<rrk::Method> parse_methods(const std::string& name) {
  if (name == "rrk") {
    return {rrk::Method::rrk};
  }
  if (name == "euler") {
    return {rrk::Method::euler};
  }
  return {rrk::Method::rrk, rrk::Method::euler};
}

rrk::ErrorMetric parse_metric(const std::string& name) {
  return name == "terminal" ? rrk::ErrorMetric::terminal
                            : rrk::ErrorMetric::max_over_grid;
}

void print_slope_table(std::ostream& os, const rrk::StudyResult& result) {
  os << "method   interval  slope       residual    theory\n";
  for (const auto& slope : result.slopes) {
    char line[128];
    std::snprintf(line, sizeof line, "%-8s %-9d %-11.4f %-11.4f %.4f\n",
                  rrk::method_name(slope.method), slope.interval, slope.slope,
                  slope.residual, slope.theory_order);
    os << line;
  }
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  ProblemFlags flags;
  int steps = 32;
  std::string method = "rrk";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

int run_solve(const SolveArgs& a) {
  const auto spec = build_problem(a.flags);
  rrk::TrialDraws draws(a.seed, 0);
  const auto traj = a.method == "euler"
                        ? rrk::euler_solve(spec.problem, a.steps, draws)
                        : rrk::rrk_solve(spec.problem, a.steps, draws);

  rrk::ConfigEcho echo = problem_echo(spec, a.flags.n_taus);
  echo.emplace_back("steps", std::to_string(a.steps));
  echo.emplace_back("method", a.method);
  echo.emplace_back("seed", std::to_string(a.seed));

  const auto write = [&](std::ostream& os) {
    if (a.format == "json") {
      rrk::write_trajectory_json(os, traj, echo);
    } else {
      rrk::write_trajectory_csv(os, traj, echo);
    }
  };
  if (a.out.empty()) {
    write(std::cout);
    return 0;
  }
  auto file = open_output(a.out);
  write(file);

  std::cout << "resolved ";
  print_echo(std::cout, echo);
  double junction_gap = 0.0;
  for (int j = 0; j <= traj.grid().n_intervals; ++j) {
    for (int d = 0; d < traj.dim(); ++d) {
      junction_gap = std::max(
          junction_gap, std::abs(traj.state(0, j)[d] -
                                 traj.state(traj.grid().n_steps, j - 1)[d]));
    }
  }
  std::cout << "f_evals=" << traj.f_evals()
            << " junction_gap=" << rrk::format_double(junction_gap) << "\n"
            << "wrote " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct StudyArgs {
  ProblemFlags flags;
  std::string h_exps = "4..7";
  int href_exp = 13;
  int trials = 200;
  double p = 2.0;
  std::string metric = "max";
  std::string method = "both";
  std::uint64_t seed = 0;
  int jobs = default_jobs();
  bool timing = false;
  std::string out;
  std::string format = "csv";
};

rrk::ConfigEcho study_echo(const rrk::ProblemSpec& spec, const StudyArgs& a) {
  // Scheduling and measurement flags (--jobs, --timing) are deliberately
  // not echoed: outputs must be byte-identical across them.
  rrk::ConfigEcho echo = problem_echo(spec, a.flags.n_taus);
  echo.emplace_back("h_exps", a.h_exps);
  echo.emplace_back("href_exp", std::to_string(a.href_exp));
  echo.emplace_back("trials", std::to_string(a.trials));
  echo.emplace_back("p", compact(a.p));
  echo.emplace_back("metric", a.metric);
  echo.emplace_back("method", a.method);
  echo.emplace_back("seed", std::to_string(a.seed));
  return echo;
}

rrk::StudyResult run_study_for(const rrk::ProblemSpec& spec,
                               const StudyArgs& a,
                               std::vector<rrk::Method> methods) {
  rrk::StudyConfig cfg;
  cfg.h_exponents = parse_exponents(a.h_exps);
  cfg.ref_exponent = a.href_exp;
  cfg.trials = a.trials;
  cfg.p = a.p;
  cfg.metric = parse_metric(a.metric);
  cfg.seed = a.seed;
  cfg.methods = std::move(methods);
  cfg.jobs = a.jobs;
  return rrk::run_study(spec.problem, cfg);
}

int run_study_cmd(const StudyArgs& a) {
  const auto spec = build_problem(a.flags);
  const auto result = run_study_for(spec, a, parse_methods(a.method));
  const auto echo = study_echo(spec, a);

  if (a.out.empty()) {
    if (a.format == "json") {
      rrk::write_study_json(std::cout, result, echo, a.timing);
    } else {
      rrk::write_study_rows_csv(std::cout, result, echo, a.timing);
      std::cout << "\n";
      rrk::write_study_slopes_csv(std::cout, result, echo);
    }
  } else if (a.format == "json") {
    auto file = open_output(a.out + ".json");
    rrk::write_study_json(file, result, echo, a.timing);
    std::cout << "wrote " << a.out << ".json\n";
  } else {
    auto rows = open_output(a.out + "_rows.csv");
    rrk::write_study_rows_csv(rows, result, echo, a.timing);
    auto slopes = open_output(a.out + "_slopes.csv");
    rrk::write_study_slopes_csv(slopes, result, echo);
    std::cout << "wrote " << a.out << "_rows.csv and " << a.out
              << "_slopes.csv\n";
  }

  if (!a.out.empty() || a.format == "json") {
    std::ostream& os = a.out.empty() ? std::cerr : std::cout;
    os << "resolved ";
    print_echo(os, echo);
    print_slope_table(os, result);
  }
  return result.any_all_failed ? 3 : 0;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  ProblemFlags flags;
  std::string h_exps = "4..7";
  int href_exp = 13;
  int trials = 500;
  double p = 2.0;
  std::string metric = "max";
  std::uint64_t seed = 0;
  int jobs = default_jobs();
  std::string out;
};

int run_compare(const CompareArgs& a) {
  const auto spec = build_problem(a.flags);
  StudyArgs as_study;
  as_study.flags = a.flags;
  as_study.h_exps = a.h_exps;
  as_study.href_exp = a.href_exp;
  as_study.trials = a.trials;
  as_study.p = a.p;
  as_study.metric = a.metric;
  as_study.method = "both";
  as_study.seed = a.seed;
  as_study.jobs = a.jobs;
  const auto result = run_study_for(
      spec, as_study, {rrk::Method::rrk, rrk::Method::euler});
  const auto echo = study_echo(spec, as_study);

  if (a.out.empty()) {
    rrk::write_compare_csv(std::cout, result, echo);
  } else {
    auto file = open_output(a.out);
    rrk::write_compare_csv(file, result, echo);
    std::cout << "wrote " << a.out << "\n";
  }

  std::ostream& os = a.out.empty() ? std::cerr : std::cout;
  os << "resolved ";
  print_echo(os, echo);
  os << "h             err_rrk      err_euler    err_ratio   time_ratio\n";
  for (int l : parse_exponents(a.h_exps)) {
    const double h = std::ldexp(1.0, -l);
    double err_rrk = 0.0;
    double err_euler = 0.0;
    double t_rrk = 0.0;
    double t_euler = 0.0;
    for (const auto& row : result.rows) {
      if (row.h_exponent != l) {
        continue;
      }
      if (row.method == rrk::Method::rrk) {
        err_rrk = std::max(err_rrk, row.error);
        t_rrk = row.wall_time_s;
      } else {
        err_euler = std::max(err_euler, row.error);
        t_euler = row.wall_time_s;
      }
    }
    char line[160];
    std::snprintf(line, sizeof line,
                  "%-13.6g %-12.4e %-12.4e %-11.3f %.3f\n", h, err_rrk,
                  err_euler, err_euler > 0.0 ? err_rrk / err_euler : 0.0,
                  t_euler > 0.0 ? t_rrk / t_euler : 0.0);
    os << line;
  }
  return result.any_all_failed ? 3 : 0;
}

// ---------------------------------------------------------------------------

int run_problems_list() {
  for (const auto& info : rrk::list_problems()) {
    std::cout << info.name << "\n  " << info.summary << "\n  parameters:";
    for (const auto& p : info.parameter_names) {
      std::cout << " --" << p;
    }
    std::cout << "\n  exact solution: " << (info.has_exact ? "yes" : "no")
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Randomized time-stepping for constant-lag delay differential "
      "equations: trajectories, Monte Carlo convergence studies, and "
      "method comparisons"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand(
      "solve", "Integrate one trajectory and write every grid node");
  add_problem_flags(solve, solve_args.flags);
  solve->add_option("--steps", solve_args.steps,
                    "Steps per lag interval")
      ->capture_default_str();
  solve->add_option("--method", solve_args.method, "rrk or euler")
      ->check(CLI::IsMember({"rrk", "euler"}))
      ->capture_default_str();
  solve->add_option("--seed", solve_args.seed, "Master seed")
      ->envname("RRK_SEED")
      ->capture_default_str();
  solve->add_option("--out", solve_args.out, "Output path (default stdout)");
  solve->add_option("--format", solve_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  StudyArgs study_args;
  auto* study = app.add_subcommand(
      "study",
      "Monte Carlo convergence study: errors per step size and fitted "
      "orders");
  add_problem_flags(study, study_args.flags);
  study->add_option("--h-exps", study_args.h_exps,
                    "Step exponents: inclusive range A..B or comma list; "
                    "h = 2^-L")
      ->capture_default_str();
  study->add_option("--href-exp", study_args.href_exp,
                    "Reference step exponent")
      ->capture_default_str();
  study->add_option("--trials", study_args.trials, "Monte Carlo trials")
      ->capture_default_str();
  study->add_option("--p", study_args.p, "Error norm exponent (p >= 1)")
      ->capture_default_str();
  study->add_option("--metric", study_args.metric,
                    "max (over grid nodes) or terminal")
      ->check(CLI::IsMember({"max", "terminal"}))
      ->capture_default_str();
  study->add_option("--method", study_args.method, "rrk, euler, or both")
      ->check(CLI::IsMember({"rrk", "euler", "both"}))
      ->capture_default_str();
  study->add_option("--seed", study_args.seed, "Master seed")
      ->envname("RRK_SEED")
      ->capture_default_str();
  study->add_option("--jobs", study_args.jobs,
                    "Worker threads (never affects results)")
      ->capture_default_str();
  study->add_flag("--timing", study_args.timing,
                  "Write measured wall times instead of zeros");
  study->add_option("--out", study_args.out,
                    "Output basename: writes <out>_rows.csv and "
                    "<out>_slopes.csv, or <out>.json");
  study->add_option("--format", study_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CompareArgs compare_args;
  compare_args.flags.problem = "example1";
  auto* compare = app.add_subcommand(
      "compare",
      "Run both methods head to head and report error and cost per step "
      "size");
  add_problem_flags(compare, compare_args.flags);
  compare->add_option("--h-exps", compare_args.h_exps,
                      "Step exponents: A..B or comma list")
      ->capture_default_str();
  compare->add_option("--href-exp", compare_args.href_exp,
                      "Reference step exponent")
      ->capture_default_str();
  compare->add_option("--trials", compare_args.trials, "Monte Carlo trials")
      ->capture_default_str();
  compare->add_option("--p", compare_args.p, "Error norm exponent")
      ->capture_default_str();
  compare->add_option("--metric", compare_args.metric, "max or terminal")
      ->check(CLI::IsMember({"max", "terminal"}))
      ->capture_default_str();
  compare->add_option("--seed", compare_args.seed, "Master seed")
      ->envname("RRK_SEED")
      ->capture_default_str();
  compare->add_option("--jobs", compare_args.jobs, "Worker threads")
      ->capture_default_str();
  compare->add_option("--out", compare_args.out, "Output CSV path");

  auto* problems =
      app.add_subcommand("problems", "List the built-in problems");
  problems->add_subcommand("list", "List the built-in problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      return run_solve(solve_args);
    }
    if (study->parsed()) {
      return run_study_cmd(study_args);
    }
    if (compare->parsed()) {
      return run_compare(compare_args);
    }
    if (problems->parsed()) {
      return run_problems_list();
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rrk::Error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
