#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/bounds.hpp"
#include "aoi/distribution.hpp"

namespace aoi {

/// One scenario file: flat `key = value` lines, `#` starts a comment.
/// Lists are comma separated; grids also accept `linspace(a,b,n)` and
/// `logspace(a,b,n)` (n points from a to b, log-spaced for the latter).
struct Config {
  std::string name = "scenario";
  // Mean event rate and mean service rate.
  double lambda = 0.5;
  double mu = 0.25;
  // exponential | deterministic | erlang:<k>
  std::string event_kind = "exponential";
  std::string service_kind = "exponential";
  // tt | et | both
  std::string policy = "both";
  std::vector<double> w;
  std::vector<double> alpha;
  std::vector<double> epsilon{1e-6};
  std::vector<Metric> metrics{Metric::Delay, Metric::PeakAoI, Metric::PeakDoI};
  std::int64_t samples = 10'000'000;
  std::uint64_t seed = 1;
  std::int64_t burn_in = 10'000;
  // Sweep keys.
  std::string sweep_axis = "utilization";
  std::vector<double> grid;
  bool couple_alpha = true;

  bool wants_tt() const { return policy == "tt" || policy == "both"; }
  bool wants_et() const { return policy == "et" || policy == "both"; }
};

Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);

/// Distribution with mean 1/rate: exponential(rate), deterministic(1/rate),
/// or erlang:<k> with shape k and rate k * rate.
DistributionModel model_from_kind(std::string_view kind, double rate);

/// Grid expression: list, linspace(a,b,n) or logspace(a,b,n).
std::vector<double> parse_grid(std::string_view text);

/// 50 log-spaced utilizations in [0.05, 0.95].
std::vector<double> default_utilization_grid();

}  // namespace aoi
