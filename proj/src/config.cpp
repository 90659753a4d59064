#include "aoi/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "aoi/errors.hpp"
#include "aoi/optimize.hpp"

namespace aoi {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s, std::string_view key) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("key '" + std::string(key) + "': not a number: '" + std::string(s) + "'");
  }
  return v;
}

template <class Int>
Int parse_integer(std::string_view s, std::string_view key) {
  s = trim(s);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size()) return v;
  // Accept integral values written in scientific notation, e.g. 1e7.
  const double d = parse_double(s, key);
  if (d < 0.0 || d != static_cast<double>(static_cast<Int>(d))) {
    throw ConfigError("key '" + std::string(key) + "': not a nonnegative integer: '" + std::string(s) + "'");
  }
  return static_cast<Int>(d);
}

std::vector<double> parse_list(std::string_view s, std::string_view key) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (auto part : split(s, ',')) out.push_back(parse_double(part, key));
  return out;
}

Metric parse_metric(std::string_view s) {
  if (s == "delay") return Metric::Delay;
  if (s == "aoi") return Metric::PeakAoI;
  if (s == "doi") return Metric::PeakDoI;
  throw ConfigError("unknown metric '" + std::string(s) + "'");
}

void check_kind(std::string_view kind) { (void)model_from_kind(kind, 1.0); }

}  // namespace

DistributionModel model_from_kind(std::string_view kind, double rate) {
  if (!(rate > 0.0)) throw ConfigError("rates must be > 0");
  if (kind == "exponential") return DistributionModel::exponential(rate);
  if (kind == "deterministic") return DistributionModel::deterministic(1.0 / rate);
  if (kind.substr(0, 7) == "erlang:") {
    const int shape = parse_integer<int>(kind.substr(7), "erlang shape");
    if (shape < 1) throw ConfigError("erlang shape must be >= 1");
    return DistributionModel::erlang(shape, shape * rate);
  }
  throw ConfigError("unknown distribution kind '" + std::string(kind) + "'");
}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  for (std::string_view fn : {"linspace", "logspace"}) {
    if (text.substr(0, fn.size()) != fn) continue;
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      throw ConfigError("malformed grid '" + std::string(text) + "'");
    }
    const auto args = split(text.substr(open + 1, close - open - 1), ',');
    if (args.size() != 3) throw ConfigError(std::string(fn) + " takes (start, stop, count)");
    const double a = parse_double(args[0], "grid");
    const double b = parse_double(args[1], "grid");
    const int n = parse_integer<int>(args[2], "grid");
    if (n < 1) throw ConfigError("grid count must be >= 1");
    if (fn == "logspace") {
      if (!(a > 0.0 && b >= a)) throw ConfigError("logspace needs 0 < start <= stop");
      return log_grid(a, b, n);
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return out;
  }
  return parse_list(text, "grid");
}

std::vector<double> default_utilization_grid() { return log_grid(0.05, 0.95, 50); }

Config parse_config(std::string_view text) {
  Config cfg;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "name") {
      cfg.name = std::string(value);
    } else if (key == "lambda") {
      cfg.lambda = parse_double(value, key);
    } else if (key == "mu") {
      cfg.mu = parse_double(value, key);
    } else if (key == "event_kind") {
      check_kind(value);
      cfg.event_kind = std::string(value);
    } else if (key == "service_kind") {
      check_kind(value);
      cfg.service_kind = std::string(value);
    } else if (key == "policy") {
      if (value != "tt" && value != "et" && value != "both") throw ConfigError("policy must be tt, et or both");
      cfg.policy = std::string(value);
    } else if (key == "w") {
      cfg.w = parse_list(value, key);
    } else if (key == "alpha") {
      cfg.alpha = parse_list(value, key);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_list(value, key);
    } else if (key == "metrics") {
      cfg.metrics.clear();
      for (auto m : split(value, ',')) cfg.metrics.push_back(parse_metric(m));
    } else if (key == "samples") {
      cfg.samples = parse_integer<std::int64_t>(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_integer<std::uint64_t>(value, key);
    } else if (key == "burn_in") {
      cfg.burn_in = parse_integer<std::int64_t>(value, key);
    } else if (key == "sweep_axis") {
      if (value != "utilization" && value != "w") throw ConfigError("sweep_axis must be utilization or w");
      cfg.sweep_axis = std::string(value);
    } else if (key == "grid") {
      cfg.grid = parse_grid(value);
    } else if (key == "couple_alpha") {
      if (value != "true" && value != "false") throw ConfigError("couple_alpha must be true or false");
      cfg.couple_alpha = value == "true";
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (!(cfg.lambda > 0.0) || !(cfg.mu > 0.0)) throw ConfigError("lambda and mu must be > 0");
  for (double e : cfg.epsilon) {
    if (!(e > 0.0)) throw ConfigError("epsilon values must be > 0");
  }
  for (double w : cfg.w) {
    if (!(w > 0.0)) throw ConfigError("w values must be > 0");
  }
  for (double a : cfg.alpha) {
    if (!(a >= 1.0)) throw ConfigError("alpha values must be >= 1");
  }
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace aoi
