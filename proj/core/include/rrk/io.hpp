#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rrk/study.hpp"
#include "rrk/trajectory.hpp"

namespace rrk {

/// 17-significant-digit scientific form. Round-trips every finite double
/// exactly; non-finite values print as "nan", "inf", "-inf".
[[nodiscard]] std::string format_double(double v);

/// Resolved run configuration echoed into output files, in emission order.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// CSV with one row per grid node, initial segment included:
///   t,j,k,y_0[,y_1,...]
/// preceded by one `# key=value` comment line per config entry.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory,
                          const ConfigEcho& config = {});

/// JSON object with config, grid, f_evals, and one node record per row of
/// the CSV form. Non-finite numbers are emitted as JSON strings.
void write_trajectory_json(std::ostream& os, const Trajectory& trajectory,
                           const ConfigEcho& config = {});

/// Study cells:
///   method,h,interval,error,p,trials,failures,theory_order,k_bound,wall_time_s
/// Measured wall times are only written when `include_timing` is set;
/// otherwise the column is zero so identical runs produce identical bytes.
void write_study_rows_csv(std::ostream& os, const StudyResult& result,
                          const ConfigEcho& config = {},
                          bool include_timing = false);

/// Fitted orders:
///   method,interval,slope,residual,theory_order
void write_study_slopes_csv(std::ostream& os, const StudyResult& result,
                            const ConfigEcho& config = {});

/// Rows and slopes in one JSON document. Each slope carries both readings
/// of the fit: `slope` for the L^p-averaged error and `slope_pth_power`
/// (p times larger) for the mean p-th power of the error.
void write_study_json(std::ostream& os, const StudyResult& result,
                      const ConfigEcho& config = {},
                      bool include_timing = false);

/// Head-to-head cost table: method,h,interval,error,wall_time_s with
/// measured times always included.
void write_compare_csv(std::ostream& os, const StudyResult& result,
                       const ConfigEcho& config = {});

}  // namespace rrk
