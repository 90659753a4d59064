#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aoi/bounds.hpp"
#include "aoi/config.hpp"
#include "aoi/csv.hpp"
#include "aoi/replication.hpp"

namespace aoi {

struct RunOptions {
  unsigned workers = 0;
  bool allow_vacuous = false;
  // Command-line overrides of the config values.
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> samples;
};

struct SweepSpec {
  std::string name = "sweep";
  double lambda = 0.5;
  double mu = 0.25;
  std::string event_kind = "exponential";
  std::string service_kind = "exponential";
  std::vector<double> epsilon{1e-6};
  std::vector<Metric> metrics{Metric::Delay, Metric::PeakAoI, Metric::PeakDoI};
  // utilization | w
  std::string axis = "utilization";
  std::vector<double> grid;
  // alpha = lambda w; otherwise `alpha` is used for every point.
  bool couple_alpha = true;
  double alpha = 1.0;
  bool include_tt = true;
  bool include_et = true;

  static SweepSpec from_config(const Config& cfg);
};

/// Optimised bound for one scenario and metric as a CSV row. Infeasible
/// scenarios give a row without value flagged "infeasible".
CsvRow bound_row(const std::string& scenario_id, const std::string& axis, double axis_value,
                 const Scenario& scenario, Metric metric);

/// Replication count used for a total sample budget: one per 10^5 samples,
/// between 1 and 8.
int replications_for(std::int64_t samples);

/// Rounds alpha to the nearest integer, minimum 1.
double simulation_alpha(double alpha);

/// Bound rows for every configured (policy parameter, metric, epsilon).
std::vector<CsvRow> cmd_bound(const Config& cfg, const RunOptions& opts);

/// Empirical quantiles at every configured epsilon for every configured
/// policy parameter, with the binomial 3-sigma error of the exceedance
/// frequency in the flag column.
std::vector<CsvRow> cmd_simulate(const Config& cfg, const RunOptions& opts);

/// Both policies at every grid point with coupled parameters.
std::vector<CsvRow> cmd_sweep(const SweepSpec& spec, const RunOptions& opts);

struct ParameterOptimum {
  double parameter;
  double value;
  double utilization;
};

/// Minimises the optimised bound over w: scan of w_grid, then golden-section
/// refinement between the neighbours of the best grid point.
ParameterOptimum minimize_over_w(const DistributionModel& events, const DistributionModel& service, double epsilon,
                                 Metric metric, const std::vector<double>& w_grid);

/// Minimises the optimised bound over integer alpha in [alpha_lo, alpha_hi].
ParameterOptimum minimize_over_alpha(const DistributionModel& events, const DistributionModel& service,
                                     double epsilon, Metric metric, int alpha_lo, int alpha_hi);

/// Least-squares slope of ln(epsilon) against the optimised bound at
/// `points` log-spaced epsilon values in [eps_lo, eps_hi].
double bound_decay_slope(const Scenario& scenario, Metric metric, double eps_lo, double eps_hi, int points);

struct FigureOutput {
  std::vector<CsvRow> rows;
  nlohmann::json summary;
};

const std::vector<std::string>& figure_names();

/// Dataset and headline summary of one figure; throws ConfigError for an
/// unknown name.
FigureOutput cmd_figure(std::string_view name, const RunOptions& opts);

}  // namespace aoi
