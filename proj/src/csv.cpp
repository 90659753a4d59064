#include "aoi/csv.hpp"

#include <cmath>
#include <cstdio>

namespace aoi {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void add_flag(std::string& flag, std::string_view token) {
  if (!flag.empty()) flag += ';';
  flag += token;
}

void write_csv(std::ostream& out, std::span<const CsvRow> rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.policy << ',' << r.axis << ',' << format_number(r.axis_value) << ','
        << format_number(r.utilization) << ',' << r.metric << ',' << r.source << ',' << format_number(r.epsilon)
        << ',' << (r.value ? format_number(*r.value) : "") << ','
        << (r.theta_star ? format_number(*r.theta_star) : "") << ',' << r.flag << '\n';
  }
}

}  // namespace aoi
