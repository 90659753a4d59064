#include "aoi/experiment.hpp"

#include <cmath>
#include <sstream>

#include "aoi/errors.hpp"
#include "aoi/parallel.hpp"
#include "aoi/rng.hpp"

namespace aoi {

namespace {

// One policy configuration of a command: the row keys plus the policy itself.
struct PolicyPoint {
  std::string axis;
  double axis_value;
  std::optional<TriggerPolicy> policy;
  std::string flag;
};

std::optional<TriggerPolicy> try_event_triggered(double alpha, std::string& flag) {
  if (!(alpha >= 1.0)) {
    add_flag(flag, "infeasible");
    add_flag(flag, "alpha_below_1");
    return std::nullopt;
  }
  return TriggerPolicy::event_triggered(alpha);
}

std::vector<PolicyPoint> policy_points(const Config& cfg, bool round_alpha) {
  std::vector<PolicyPoint> points;
  if (cfg.wants_tt()) {
    for (double w : cfg.w) points.push_back({"w", w, TriggerPolicy::time_triggered(w), {}});
  }
  if (cfg.wants_et()) {
    std::vector<double> alphas = cfg.alpha;
    if (alphas.empty() && cfg.couple_alpha) {
      for (double w : cfg.w) alphas.push_back(cfg.lambda * w);
    }
    for (double a : alphas) {
      PolicyPoint p{"alpha", a, std::nullopt, {}};
      double used = a;
      if (round_alpha) {
        used = simulation_alpha(a);
        if (used != a) add_flag(p.flag, "alpha_rounded=" + format_number(a) + "->" + format_number(used));
      }
      p.policy = try_event_triggered(used, p.flag);
      points.push_back(std::move(p));
    }
  }
  return points;
}

Scenario scenario_for(const Config& cfg, const TriggerPolicy& policy, double epsilon) {
  return Scenario{model_from_kind(cfg.event_kind, cfg.lambda), model_from_kind(cfg.service_kind, cfg.mu), policy,
                  epsilon};
}

double nominal_utilization(const Config& cfg, const PolicyPoint& p) {
  const double mean_service = model_from_kind(cfg.service_kind, cfg.mu).mean();
  if (p.axis == "w") return mean_service / p.axis_value;
  return mean_service / (p.axis_value * model_from_kind(cfg.event_kind, cfg.lambda).mean());
}

void check_admissible(const Config& cfg, const std::vector<PolicyPoint>& points, const RunOptions& opts) {
  if (opts.allow_vacuous) return;
  for (double e : cfg.epsilon) {
    if (e >= 1.0) throw ConfigError("epsilon >= 1 gives vacuous bounds; pass --allow-vacuous");
  }
  for (const auto& p : points) {
    if (p.policy && scenario_for(cfg, *p.policy, 0.5).utilization() >= 1.0) {
      throw ConfigError("scenario " + p.axis + "=" + format_number(p.axis_value) +
                        " has utilization >= 1; pass --allow-vacuous to emit flagged rows");
    }
  }
}

CsvRow infeasible_row(const std::string& id, const std::string& policy, const std::string& axis, double axis_value,
                      double utilization, Metric metric, double epsilon, std::string flag) {
  CsvRow row{id, policy, axis, axis_value, utilization, std::string(metric_name(metric)), "bound", epsilon,
             std::nullopt, std::nullopt, std::move(flag)};
  if (row.flag.find("infeasible") == std::string::npos) add_flag(row.flag, "infeasible");
  return row;
}

std::uint64_t scenario_seed(std::uint64_t seed, std::size_t index) { return mix64(mix64(seed) + index); }

}  // namespace

int replications_for(std::int64_t samples) {
  auto reps = static_cast<int>(std::clamp<std::int64_t>(samples / 100000, 1, 8));
  while (samples % reps != 0) --reps;
  return reps;
}

double simulation_alpha(double alpha) { return std::max(1.0, std::round(alpha)); }

CsvRow bound_row(const std::string& scenario_id, const std::string& axis, double axis_value,
                 const Scenario& scenario, Metric metric) {
  CsvRow row{scenario_id, scenario.policy.short_name(), axis, axis_value, scenario.utilization(),
             std::string(metric_name(metric)), "bound", scenario.epsilon, std::nullopt, std::nullopt, {}};
  try {
    const auto r = optimize_theta(scenario, metric);
    row.value = r.value;
    row.theta_star = r.theta_star;
    if (r.value_int) add_flag(row.flag, "phi_int=" + std::to_string(*r.value_int));
    if (r.vacuous) add_flag(row.flag, "vacuous");
  } catch (const NoFeasibleTheta&) {
    add_flag(row.flag, "infeasible");
  } catch (const InfiniteDoI&) {
    add_flag(row.flag, "infinite_doi");
  }
  return row;
}

std::vector<CsvRow> cmd_bound(const Config& cfg, const RunOptions& opts) {
  const auto points = policy_points(cfg, false);
  check_admissible(cfg, points, opts);

  struct Task {
    const PolicyPoint* point;
    Metric metric;
    double epsilon;
  };
  std::vector<Task> tasks;
  for (const auto& p : points) {
    for (Metric m : cfg.metrics) {
      for (double e : cfg.epsilon) tasks.push_back({&p, m, e});
    }
  }
  std::vector<CsvRow> rows(tasks.size());
  parallel_for(tasks.size(), opts.workers, [&](std::size_t i) {
    const auto& t = tasks[i];
    const auto& p = *t.point;
    if (!p.policy) {
      rows[i] = infeasible_row(cfg.name, p.axis == "w" ? "tt" : "et", p.axis, p.axis_value,
                               nominal_utilization(cfg, p), t.metric, t.epsilon, p.flag);
      return;
    }
    rows[i] = bound_row(cfg.name, p.axis, p.axis_value, scenario_for(cfg, *p.policy, t.epsilon), t.metric);
  });

  // The event-triggered alpha = 1 system with exponential events and service
  // is an M|M|1 queue with a known sojourn-time tail.
  const bool mm1 = cfg.event_kind == "exponential" && cfg.service_kind == "exponential" && cfg.lambda < cfg.mu;
  for (const auto& p : points) {
    if (!mm1 || !p.policy || p.policy->is_time_triggered() || p.policy->parameter() != 1.0) continue;
    for (Metric m : cfg.metrics) {
      if (m != Metric::Delay) continue;
      for (double e : cfg.epsilon) {
        rows.push_back({cfg.name, "et", p.axis, p.axis_value, cfg.lambda / cfg.mu, "delay", "exact", e,
                        exact_mm1_tail(cfg.lambda, cfg.mu, e), std::nullopt, {}});
      }
    }
  }
  return rows;
}

std::vector<CsvRow> cmd_simulate(const Config& cfg, const RunOptions& opts) {
  const auto points = policy_points(cfg, true);
  if (!opts.allow_vacuous) {
    for (const auto& p : points) {
      if (p.policy && scenario_for(cfg, *p.policy, 0.5).utilization() >= 1.0) {
        throw ConfigError("scenario " + p.axis + "=" + format_number(p.axis_value) +
                          " is unstable (utilization >= 1); pass --allow-vacuous to simulate it anyway");
      }
    }
  }
  const std::int64_t samples = opts.samples.value_or(cfg.samples);
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  const int reps = replications_for(samples);
  SimulationOptions sim;
  sim.burn_in = cfg.burn_in;
  sim.workers = opts.workers;

  std::vector<CsvRow> rows;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    if (!p.policy) continue;
    const auto scenario = scenario_for(cfg, *p.policy, cfg.epsilon.front());
    const auto tails = run_replications(scenario, samples / reps, reps, scenario_seed(seed, k), sim);
    for (Metric m : cfg.metrics) {
      const EmpiricalTail& tail = m == Metric::Delay ? tails.delay : m == Metric::PeakAoI ? tails.aoi : tails.doi;
      for (double e : cfg.epsilon) {
        std::string flag = p.flag;
        const double n = static_cast<double>(tail.size());
        add_flag(flag, "err3s=" + format_number(3.0 * std::sqrt(std::min(e, 1.0) * std::max(0.0, 1.0 - e) / n)));
        if (tail.insufficient_for(e)) add_flag(flag, "insufficient_samples");
        if (tail.is_histogram()) add_flag(flag, "resolution=" + format_number(tail.resolution()));
        rows.push_back({cfg.name, p.policy->short_name(), p.axis, p.axis_value, scenario.utilization(),
                        std::string(metric_name(m)), "simulation", e, tail.quantile(e), std::nullopt, flag});
      }
    }
  }
  return rows;
}

SweepSpec SweepSpec::from_config(const Config& cfg) {
  SweepSpec spec;
  spec.name = cfg.name;
  spec.lambda = cfg.lambda;
  spec.mu = cfg.mu;
  spec.event_kind = cfg.event_kind;
  spec.service_kind = cfg.service_kind;
  spec.epsilon = cfg.epsilon;
  spec.metrics = cfg.metrics;
  spec.axis = cfg.sweep_axis;
  spec.grid = cfg.grid;
  if (spec.grid.empty() && spec.axis == "utilization") spec.grid = default_utilization_grid();
  spec.couple_alpha = cfg.couple_alpha;
  if (!cfg.alpha.empty()) spec.alpha = cfg.alpha.front();
  spec.include_tt = cfg.wants_tt();
  spec.include_et = cfg.wants_et();
  return spec;
}

std::vector<CsvRow> cmd_sweep(const SweepSpec& spec, const RunOptions& opts) {
  const auto events = model_from_kind(spec.event_kind, spec.lambda);
  const auto service = model_from_kind(spec.service_kind, spec.mu);
  const double mean_service = service.mean();
  const double mean_event = events.mean();

  struct Point {
    std::string policy;
    double axis_value;
    double utilization;
    std::optional<TriggerPolicy> trigger;
    std::string flag;
  };
  std::vector<Point> points;
  for (double v : spec.grid) {
    if (!(v > 0.0)) throw ConfigError("sweep grid values must be > 0");
    const double w = spec.axis == "utilization" ? mean_service / v : v;
    const double alpha = spec.axis == "utilization" ? mean_service / (v * mean_event)
                         : spec.couple_alpha         ? w / mean_event
                                                     : spec.alpha;
    if (spec.include_tt) {
      Point p{"tt", v, mean_service / w, std::nullopt, {}};
      if (spec.axis == "utilization") add_flag(p.flag, "w=" + format_number(w));
      if (p.utilization >= 1.0) {
        add_flag(p.flag, "infeasible");
      } else {
        p.trigger = TriggerPolicy::time_triggered(w);
      }
      points.push_back(std::move(p));
    }
    if (spec.include_et) {
      Point p{"et", v, mean_service / (alpha * mean_event), std::nullopt, {}};
      if (spec.couple_alpha || spec.axis == "utilization") {
        add_flag(p.flag, "alpha=" + format_number(alpha));
        add_flag(p.flag, "alpha_round=" + format_number(simulation_alpha(alpha)));
      }
      if (p.utilization >= 1.0) {
        add_flag(p.flag, "infeasible");
      } else {
        p.trigger = try_event_triggered(alpha, p.flag);
      }
      points.push_back(std::move(p));
    }
  }

  struct Task {
    const Point* point;
    Metric metric;
    double epsilon;
  };
  std::vector<Task> tasks;
  for (const auto& p : points) {
    for (Metric m : spec.metrics) {
      for (double e : spec.epsilon) tasks.push_back({&p, m, e});
    }
  }
  std::vector<CsvRow> rows(tasks.size());
  parallel_for(tasks.size(), opts.workers, [&](std::size_t i) {
    const auto& t = tasks[i];
    const auto& p = *t.point;
    if (!p.trigger) {
      rows[i] = infeasible_row(spec.name, p.policy, spec.axis, p.axis_value, p.utilization, t.metric, t.epsilon,
                               p.flag);
      return;
    }
    rows[i] = bound_row(spec.name, spec.axis, p.axis_value, Scenario{events, service, *p.trigger, t.epsilon},
                        t.metric);
    std::string flag = p.flag;
    if (!rows[i].flag.empty()) add_flag(flag, rows[i].flag);
    rows[i].flag = std::move(flag);
  });
  return rows;
}

}  // namespace aoi
