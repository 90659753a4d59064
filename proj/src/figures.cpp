#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "aoi/errors.hpp"
#include "aoi/experiment.hpp"
#include "aoi/optimize.hpp"
#include "aoi/parallel.hpp"
#include "aoi/rng.hpp"

namespace aoi {

namespace {

using nlohmann::json;

constexpr std::int64_t kDefaultFigureSamples = 10'000'000;

std::vector<double> decade_grid(double lo, double hi, int per_decade) {
  const int n = static_cast<int>(std::lround(std::log10(hi / lo) * per_decade)) + 1;
  auto grid = log_grid(lo, hi, n);
  std::reverse(grid.begin(), grid.end());
  return grid;
}

std::vector<double> w_axis_grid(double mean_service) {
  std::vector<double> w;
  for (double u : default_utilization_grid()) w.push_back(mean_service / u);
  std::sort(w.begin(), w.end());
  return w;
}

// Smallest value among bound rows of one policy and metric.
json row_minimum(const std::vector<CsvRow>& rows, std::string_view policy, std::string_view metric) {
  const CsvRow* best = nullptr;
  for (const auto& r : rows) {
    if (r.source != "bound" || r.policy != policy || r.metric != metric || !r.value) continue;
    if (best == nullptr || *r.value < *best->value) best = &r;
  }
  if (best == nullptr) return nullptr;
  return json{{"value", *best->value}, {"axis_value", best->axis_value}, {"utilization", best->utilization}};
}

json sweep_minima(const std::vector<CsvRow>& rows, const std::vector<Metric>& metrics) {
  json out = json::object();
  for (std::string_view policy : {"tt", "et"}) {
    for (Metric m : metrics) {
      out[std::string(policy)][std::string(metric_name(m))] = row_minimum(rows, policy, metric_name(m));
    }
  }
  return out;
}

std::int64_t figure_samples(const RunOptions& opts) { return opts.samples.value_or(kDefaultFigureSamples); }

MetricTails simulate(const Scenario& scenario, const RunOptions& opts, std::uint64_t stream) {
  const std::int64_t samples = figure_samples(opts);
  const int reps = replications_for(samples);
  SimulationOptions sim;
  sim.workers = opts.workers;
  return run_replications(scenario, samples / reps, reps, mix64(mix64(opts.seed.value_or(1)) + stream), sim);
}

const EmpiricalTail& tail_of(const MetricTails& t, Metric m) {
  return m == Metric::Delay ? t.delay : m == Metric::PeakAoI ? t.aoi : t.doi;
}

void add_simulation_rows(std::vector<CsvRow>& rows, const std::string& id, const std::string& axis,
                         double axis_value, const Scenario& scenario, const MetricTails& tails,
                         const std::vector<Metric>& metrics, const std::vector<double>& epsilons) {
  for (Metric m : metrics) {
    const auto& tail = tail_of(tails, m);
    for (double e : epsilons) {
      std::string flag;
      const double n = static_cast<double>(tail.size());
      add_flag(flag, "err3s=" + format_number(3.0 * std::sqrt(e * (1.0 - e) / n)));
      if (tail.insufficient_for(e)) add_flag(flag, "insufficient_samples");
      if (tail.is_histogram()) add_flag(flag, "resolution=" + format_number(tail.resolution()));
      rows.push_back({id, scenario.policy.short_name(), axis, axis_value, scenario.utilization(),
                      std::string(metric_name(m)), "simulation", e, tail.quantile(e), std::nullopt, flag});
    }
  }
}

std::vector<CsvRow> bound_rows_over_epsilon(const std::string& id, const std::string& axis, double axis_value,
                                            Scenario scenario, const std::vector<Metric>& metrics,
                                            const std::vector<double>& epsilons, unsigned workers) {
  std::vector<CsvRow> rows(metrics.size() * epsilons.size());
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    Scenario s = scenario;
    s.epsilon = epsilons[i % epsilons.size()];
    rows[i] = bound_row(id, axis, axis_value, s, metrics[i / epsilons.size()]);
  });
  return rows;
}

void append(std::vector<CsvRow>& into, std::vector<CsvRow> rows) {
  into.insert(into.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
}

FigureOutput figure3(const RunOptions& opts) {
  const auto events = DistributionModel::exponential(0.5);
  const auto service = DistributionModel::exponential(1.0);
  const Scenario tt{events, service, TriggerPolicy::time_triggered(2.0), 1e-6};
  const Scenario et{events, service, TriggerPolicy::event_triggered(1.0), 1e-6};
  const auto epsilons = decade_grid(1e-9, 1e-1, 4);

  FigureOutput out;
  append(out.rows, bound_rows_over_epsilon("fig3", "epsilon", 2.0, tt, {Metric::Delay}, epsilons, opts.workers));
  append(out.rows, bound_rows_over_epsilon("fig3", "epsilon", 1.0, et, {Metric::Delay}, epsilons, opts.workers));
  for (double e : epsilons) {
    out.rows.push_back({"fig3", "et", "epsilon", 1.0, et.utilization(), "delay", "exact", e,
                        exact_mm1_tail(0.5, 1.0, e), std::nullopt, {}});
  }
  const auto sim_eps = decade_grid(1e-6, 1e-1, 4);
  const auto tails = simulate(tt, opts, 3);
  add_simulation_rows(out.rows, "fig3", "epsilon", 2.0, tt, tails, {Metric::Delay}, sim_eps);

  const double slope = bound_decay_slope(et, Metric::Delay, 1e-9, 1e-3, 25);
  const double exact_slope = -(1.0 - 0.5);
  json dominance = json::array();
  for (double e : {1e-2, 1e-3, 1e-4}) {
    Scenario s = tt;
    s.epsilon = e;
    const double bound = optimize_theta(s, Metric::Delay).value;
    const double empirical = tails.delay.quantile(e);
    dominance.push_back({{"epsilon", e}, {"simulation", empirical}, {"bound", bound}, {"below", empirical <= bound}});
  }
  out.summary = {{"figure", "fig3"},
                 {"et_bound_decay_slope", slope},
                 {"exact_decay_slope", exact_slope},
                 {"slope_relative_error", std::abs(slope - exact_slope) / std::abs(exact_slope)},
                 {"tt_simulation_vs_bound", dominance},
                 {"samples", tails.delay.size()}};
  return out;
}

FigureOutput sweep_figure(const std::string& id, SweepSpec spec, const RunOptions& opts) {
  spec.name = id;
  FigureOutput out;
  out.rows = cmd_sweep(spec, opts);
  out.summary = {{"figure", id}, {"lambda", spec.lambda}, {"mu", spec.mu}, {"epsilon", spec.epsilon.front()},
                 {"minima", sweep_minima(out.rows, spec.metrics)}};
  return out;
}

SweepSpec w_sweep(double lambda, const std::string& service_kind) {
  SweepSpec spec;
  spec.lambda = lambda;
  spec.mu = 0.25;
  spec.event_kind = "exponential";
  spec.service_kind = service_kind;
  spec.metrics = {Metric::Delay, Metric::PeakAoI};
  spec.axis = "w";
  spec.grid = w_axis_grid(model_from_kind(service_kind, spec.mu).mean());
  spec.couple_alpha = true;
  return spec;
}

FigureOutput figure5(const RunOptions& opts) {
  auto spec = w_sweep(0.5, "deterministic");
  auto out = sweep_figure("fig5", spec, opts);

  double max_delay_dev = 0.0;
  double max_aoi_dev = 0.0;
  for (const auto& r : out.rows) {
    if (r.policy != "tt" || !r.value || r.axis_value <= 4.0) continue;
    if (r.metric == "delay") max_delay_dev = std::max(max_delay_dev, std::abs(*r.value - 4.0));
    if (r.metric == "aoi") max_aoi_dev = std::max(max_aoi_dev, std::abs(*r.value - (4.0 + r.axis_value)));
  }
  const auto et_min = row_minimum(out.rows, "et", "aoi");
  const Scenario et_high{DistributionModel::exponential(0.5), DistributionModel::deterministic(4.0),
                         TriggerPolicy::event_triggered(0.5 * 4.0 / 0.9), 1e-6};
  const double et_high_aoi = optimize_theta(et_high, Metric::PeakAoI).value;
  out.summary["tt_delay_max_deviation_from_4"] = max_delay_dev;
  out.summary["tt_aoi_max_deviation_from_4_plus_w"] = max_aoi_dev;
  out.summary["et_aoi_at_utilization_0.9"] = et_high_aoi;
  out.summary["et_aoi_min"] = et_min["value"];
  out.summary["et_aoi_high_utilization_ratio"] = et_high_aoi / et_min["value"].get<double>();
  return out;
}

SweepSpec utilization_sweep(const std::string& event_kind, const std::string& service_kind) {
  SweepSpec spec;
  spec.lambda = 0.5;
  spec.mu = 0.25;
  spec.event_kind = event_kind;
  spec.service_kind = service_kind;
  spec.metrics = {Metric::Delay, Metric::PeakAoI, Metric::PeakDoI};
  spec.axis = "utilization";
  spec.grid = default_utilization_grid();
  return spec;
}

FigureOutput figure6(const std::string& id, const std::string& event_kind, const std::string& service_kind,
                     const RunOptions& opts) {
  auto out = sweep_figure(id, utilization_sweep(event_kind, service_kind), opts);
  const auto& tt = out.summary["minima"]["tt"];
  if (!tt["aoi"].is_null() && !tt["doi"].is_null()) {
    out.summary["min_aoi_bound"] = tt["aoi"]["value"];
    out.summary["min_doi_bound"] = tt["doi"]["value"];
    out.summary["argmin_aoi_utilization"] = tt["aoi"]["utilization"];
    out.summary["argmin_doi_utilization"] = tt["doi"]["utilization"];
  }
  return out;
}

std::vector<double> fine_w_grid() {
  std::vector<double> grid;
  for (double w = 4.5; w <= 40.0 + 1e-9; w += 0.25) grid.push_back(w);
  return grid;
}

FigureOutput figure7(const RunOptions& opts) {
  const auto events = DistributionModel::exponential(0.5);
  const auto service = DistributionModel::exponential(0.25);
  const Scenario tt{events, service, TriggerPolicy::time_triggered(13.0), 1e-6};
  const Scenario et{events, service, TriggerPolicy::event_triggered(8.0), 1e-6};
  const auto bound_eps = decade_grid(1e-9, 1e-1, 4);
  std::vector<double> sim_eps{0.999, 0.99, 0.9, 0.5};
  for (double e : decade_grid(1e-6, 1e-1, 4)) sim_eps.push_back(e);
  const std::vector<Metric> metrics{Metric::PeakAoI, Metric::PeakDoI};

  FigureOutput out;
  append(out.rows, bound_rows_over_epsilon("fig7", "w", 13.0, tt, metrics, bound_eps, opts.workers));
  append(out.rows, bound_rows_over_epsilon("fig7", "alpha", 8.0, et, metrics, bound_eps, opts.workers));
  const auto tt_tails = simulate(tt, opts, 7);
  const auto et_tails = simulate(et, opts, 8);
  add_simulation_rows(out.rows, "fig7", "w", 13.0, tt, tt_tails, metrics, sim_eps);
  add_simulation_rows(out.rows, "fig7", "alpha", 8.0, et, et_tails, metrics, sim_eps);

  const auto best_w = minimize_over_w(events, service, 1e-6, Metric::PeakDoI, fine_w_grid());
  const auto best_alpha = minimize_over_alpha(events, service, 1e-6, Metric::PeakDoI, 1, 40);
  out.summary = {
      {"figure", "fig7"},
      {"doi_optimal_w", best_w.parameter},
      {"doi_optimal_w_utilization", best_w.utilization},
      {"doi_min_tt", best_w.value},
      {"doi_optimal_alpha", best_alpha.parameter},
      {"doi_optimal_alpha_utilization", best_alpha.utilization},
      {"doi_min_et", best_alpha.value},
      {"doi_min_relative_gap", std::abs(best_w.value - best_alpha.value) / std::min(best_w.value, best_alpha.value)},
      {"et_min_simulated_doi", et_tails.doi.min()},
      {"tt_min_simulated_aoi", tt_tails.aoi.min()},
      {"tt_min_simulated_doi", tt_tails.doi.min()},
      {"samples", tt_tails.aoi.size()},
  };
  return out;
}

FigureOutput figure8(const RunOptions& opts) {
  const auto events = DistributionModel::exponential(0.5);
  const auto service = DistributionModel::exponential(0.25);
  const std::vector<Metric> metrics{Metric::PeakAoI, Metric::PeakDoI};
  std::vector<double> sim_eps{0.999, 0.99, 0.9, 0.5};
  for (double e : decade_grid(1e-6, 1e-1, 4)) sim_eps.push_back(e);

  FigureOutput out;
  out.summary = {{"figure", "fig8"}};
  std::uint64_t stream = 80;
  auto run = [&](const std::string& axis, double value, const TriggerPolicy& policy) {
    const Scenario s{events, service, policy, 1e-6};
    const auto tails = simulate(s, opts, stream++);
    add_simulation_rows(out.rows, "fig8", axis, value, s, tails, metrics, sim_eps);
    append(out.rows, bound_rows_over_epsilon("fig8", axis, value, s, metrics, {1e-6}, opts.workers));
    out.summary[policy.short_name()][format_number(value)] = {
        {"doi_bound", optimize_theta(s, Metric::PeakDoI).value},
        {"doi_simulated_1e-6", tails.doi.quantile(1e-6)},
        {"aoi_simulated_0.5", tails.aoi.quantile(0.5)},
        {"doi_simulated_0.5", tails.doi.quantile(0.5)},
    };
  };
  for (double w : {7.0, 13.0, 19.0}) run("w", w, TriggerPolicy::time_triggered(w));
  for (double a : {4.0, 8.0, 12.0}) run("alpha", a, TriggerPolicy::event_triggered(a));
  return out;
}

}  // namespace

ParameterOptimum minimize_over_w(const DistributionModel& events, const DistributionModel& service, double epsilon,
                                 Metric metric, const std::vector<double>& w_grid) {
  if (w_grid.empty()) throw ArgumentError("empty w grid");
  auto objective = [&](double w) {
    try {
      return optimize_theta(Scenario{events, service, TriggerPolicy::time_triggered(w), epsilon}, metric).value;
    } catch (const NoFeasibleTheta&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  std::vector<double> values(w_grid.size());
  for (std::size_t i = 0; i < w_grid.size(); ++i) values[i] = objective(w_grid[i]);
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  double w = w_grid[best];
  double value = values[best];
  if (std::isfinite(value) && w_grid.size() > 1) {
    const auto refined = golden_section_minimize(objective, w_grid[best == 0 ? 0 : best - 1],
                                                 w_grid[std::min(best + 1, w_grid.size() - 1)], 1e-6);
    if (refined.fx < value) {
      w = refined.x;
      value = refined.fx;
    }
  }
  return {w, value, service.mean() / w};
}

ParameterOptimum minimize_over_alpha(const DistributionModel& events, const DistributionModel& service,
                                     double epsilon, Metric metric, int alpha_lo, int alpha_hi) {
  if (alpha_lo < 1 || alpha_hi < alpha_lo) throw ArgumentError("alpha range must satisfy 1 <= lo <= hi");
  ParameterOptimum best{0.0, std::numeric_limits<double>::infinity(), 0.0};
  for (int a = alpha_lo; a <= alpha_hi; ++a) {
    const Scenario s{events, service, TriggerPolicy::event_triggered(a), epsilon};
    try {
      const double v = optimize_theta(s, metric).value;
      if (v < best.value) best = {static_cast<double>(a), v, s.utilization()};
    } catch (const NoFeasibleTheta&) {
    }
  }
  if (!std::isfinite(best.value)) throw NoFeasibleTheta("no stable alpha in range");
  return best;
}

double bound_decay_slope(const Scenario& scenario, Metric metric, double eps_lo, double eps_hi, int points) {
  if (points < 2) throw ArgumentError("slope needs at least two points");
  const auto grid = log_grid(eps_lo, eps_hi, points);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double e : grid) {
    Scenario s = scenario;
    s.epsilon = e;
    const double x = optimize_theta(s, metric).value;
    const double y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig3",  "fig4a", "fig4b", "fig4c", "fig5",
                                              "fig6a", "fig6b", "fig6c", "fig7",  "fig8"};
  return names;
}

FigureOutput cmd_figure(std::string_view name, const RunOptions& opts) {
  if (name == "fig3") return figure3(opts);
  if (name == "fig4a") return sweep_figure("fig4a", w_sweep(0.25, "exponential"), opts);
  if (name == "fig4b") return sweep_figure("fig4b", w_sweep(0.5, "exponential"), opts);
  if (name == "fig4c") return sweep_figure("fig4c", w_sweep(1.0, "exponential"), opts);
  if (name == "fig5") return figure5(opts);
  if (name == "fig6a") return figure6("fig6a", "deterministic", "exponential", opts);
  if (name == "fig6b") return figure6("fig6b", "exponential", "exponential", opts);
  if (name == "fig6c") return figure6("fig6c", "exponential", "deterministic", opts);
  if (name == "fig7") return figure7(opts);
  if (name == "fig8") return figure8(opts);
  throw ConfigError("unknown figure '" + std::string(name) + "'");
}

}  // namespace aoi
