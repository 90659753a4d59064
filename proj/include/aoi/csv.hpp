#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace aoi {

inline constexpr std::string_view kCsvHeader =
    "scenario,policy,axis,axis_value,utilization,metric,source,epsilon,value,theta_star,flag";

struct CsvRow {
  std::string scenario;
  std::string policy;  // tt | et
  std::string axis;    // w | alpha | utilization | epsilon
  double axis_value = 0.0;
  double utilization = 0.0;
  std::string metric;  // delay | aoi | doi
  std::string source;  // bound | simulation | exact
  double epsilon = 0.0;
  // Empty for infeasible rows.
  std::optional<double> value;
  // Empty for simulation and exact rows.
  std::optional<double> theta_star;
  // Semicolon separated tokens, e.g. "phi_int=45" or "err3s=3e-05;insufficient_samples".
  std::string flag;
};

/// x with 12 significant digits;
/// -0 prints as 0.
std::string format_number(double x);

void write_csv(std::ostream& out, std::span<const CsvRow> rows);

/// Appends token to a semicolon separated flag string.
void add_flag(std::string& flag, std::string_view token);

}  // namespace aoi
