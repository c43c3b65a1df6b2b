#include "rrk/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace rrk {

namespace {

void write_config_comments(std::ostream& os, const ConfigEcho& config) {
  for (const auto& [key, value] : config) {
    os << "# " << key << "=" << value << "\n";
  }
}

/// Minimal JSON string escaping; config keys and problem names are plain
/// ASCII, but correctness should not depend on that.
std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

/// JSON value for a double: a number when finite, a string otherwise.
std::string json_double(double v) {
  if (std::isfinite(v)) {
    return format_double(v);
  }
  return "\"" + format_double(v) + "\"";
}

void write_json_config(std::ostream& os, const ConfigEcho& config) {
  os << "\"config\": {";
  bool first = true;
  for (const auto& [key, value] : config) {
    if (!first) {
      os << ", ";
    }
    first = false;
    os << "\"" << json_escape(key) << "\": \"" << json_escape(value) << "\"";
  }
  os << "}";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0.0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory,
                          const ConfigEcho& config) {
  write_config_comments(os, config);
  os << "t,j,k";
  for (int d = 0; d < trajectory.dim(); ++d) {
    os << ",y_" << d;
  }
  os << "\n";
  const UniformGrid& grid = trajectory.grid();
  for (int j = -1; j <= grid.n_intervals; ++j) {
    for (int k = 0; k <= grid.n_steps; ++k) {
      os << format_double(trajectory.time(k, j)) << "," << j << "," << k;
      for (double v : trajectory.state(k, j)) {
        os << "," << format_double(v);
      }
      os << "\n";
    }
  }
}

void write_trajectory_json(std::ostream& os, const Trajectory& trajectory,
                           const ConfigEcho& config) {
  const UniformGrid& grid = trajectory.grid();
  os << "{\n  ";
  write_json_config(os, config);
  os << ",\n  \"grid\": {\"tau\": " << json_double(grid.tau)
     << ", \"n_steps\": " << grid.n_steps
     << ", \"n_intervals\": " << grid.n_intervals
     << ", \"h\": " << json_double(grid.h) << "},\n";
  os << "  \"f_evals\": " << trajectory.f_evals() << ",\n";
  os << "  \"nodes\": [\n";
  bool first = true;
  for (int j = -1; j <= grid.n_intervals; ++j) {
    for (int k = 0; k <= grid.n_steps; ++k) {
      if (!first) {
        os << ",\n";
      }
      first = false;
      os << "    {\"t\": " << json_double(trajectory.time(k, j))
         << ", \"j\": " << j << ", \"k\": " << k << ", \"y\": [";
      bool first_component = true;
      for (double v : trajectory.state(k, j)) {
        if (!first_component) {
          os << ", ";
        }
        first_component = false;
        os << json_double(v);
      }
      os << "]}";
    }
  }
  os << "\n  ]\n}\n";
}

void write_study_rows_csv(std::ostream& os, const StudyResult& result,
                          const ConfigEcho& config, bool include_timing) {
  write_config_comments(os, config);
  os << "method,h,interval,error,p,trials,failures,theory_order,k_bound,"
        "wall_time_s\n";
  for (const StudyRow& row : result.rows) {
    os << method_name(row.method) << "," << format_double(row.h) << ","
       << row.interval << "," << format_double(row.error) << ","
       << format_double(row.p) << "," << row.trials << "," << row.failures
       << "," << format_double(row.theory_order) << ","
       << format_double(row.k_bound) << ","
       << format_double(include_timing ? row.wall_time_s : 0.0) << "\n";
  }
}

void write_study_slopes_csv(std::ostream& os, const StudyResult& result,
                            const ConfigEcho& config) {
  write_config_comments(os, config);
  os << "method,interval,slope,residual,theory_order\n";
  for (const SlopeRow& slope : result.slopes) {
    os << method_name(slope.method) << "," << slope.interval << ","
       << format_double(slope.slope) << "," << format_double(slope.residual)
       << "," << format_double(slope.theory_order) << "\n";
  }
}

void write_study_json(std::ostream& os, const StudyResult& result,
                      const ConfigEcho& config, bool include_timing) {
  os << "{\n  ";
  write_json_config(os, config);
  os << ",\n  \"rows\": [\n";
  bool first = true;
  for (const StudyRow& row : result.rows) {
    if (!first) {
      os << ",\n";
    }
    first = false;
    os << "    {\"method\": \"" << method_name(row.method)
       << "\", \"h_exponent\": " << row.h_exponent
       << ", \"h\": " << json_double(row.h)
       << ", \"interval\": " << row.interval
       << ", \"error\": " << json_double(row.error)
       << ", \"p\": " << json_double(row.p) << ", \"trials\": " << row.trials
       << ", \"failures\": " << row.failures
       << ", \"theory_order\": " << json_double(row.theory_order)
       << ", \"k_bound\": " << json_double(row.k_bound)
       << ", \"wall_time_s\": "
       << json_double(include_timing ? row.wall_time_s : 0.0) << "}";
  }
  os << "\n  ],\n  \"slopes\": [\n";
  first = true;
  for (const SlopeRow& slope : result.slopes) {
    if (!first) {
      os << ",\n";
    }
    first = false;
    os << "    {\"method\": \"" << method_name(slope.method)
       << "\", \"interval\": " << slope.interval
       << ", \"slope\": " << json_double(slope.slope)
       << ", \"slope_pth_power\": "
       << json_double(slope.slope * result.config.p)
       << ", \"residual\": " << json_double(slope.residual)
       << ", \"theory_order\": " << json_double(slope.theory_order)
       << ", \"points_used\": " << slope.points_used << ", \"degenerate\": "
       << (slope.degenerate ? "true" : "false") << "}";
  }
  os << "\n  ]\n}\n";
}

void write_compare_csv(std::ostream& os, const StudyResult& result,
                       const ConfigEcho& config) {
  write_config_comments(os, config);
  os << "method,h,interval,error,wall_time_s\n";
  for (const StudyRow& row : result.rows) {
    os << method_name(row.method) << "," << format_double(row.h) << ","
       << row.interval << "," << format_double(row.error) << ","
       << format_double(row.wall_time_s) << "\n";
  }
}

}  // namespace rrk
