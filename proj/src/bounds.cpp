#include "aoi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aoi/errors.hpp"
#include "aoi/optimize.hpp"

namespace aoi {

namespace {

constexpr int kThetaGridPoints = 200;
constexpr double kThetaRelTol = 1e-6;
constexpr double kThetaCap = 1e3;
constexpr double kThetaDecades = 1e-6;

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ArgumentError("epsilon must be finite and > 0");
}

void require_stable(const EnvelopeSet& env) {
  if (!stability_check(env)) {
    std::ostringstream msg;
    msg << "unstable at theta=" << env.theta << ": rho_A_lower=" << env.rho_A_lower
        << " <= rho_S=" << env.rho_S;
    throw InstabilityError(msg.str());
  }
}

// -ln(1 - exp(-theta (rho_A_lower - rho_S))), the geometric-series factor.
double log_geometric_factor(const EnvelopeSet& env) {
  return -std::log1p(-std::exp(-env.theta * (env.rho_A_lower - env.rho_S)));
}

double log_sum_exp(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

EnvelopeSet envelopes_for(const Scenario& s, double theta, bool with_upper) {
  return evaluate_envelopes(s.policy, s.event_model, s.service_model, theta, with_upper);
}

// ln of M_Delta(theta) M_J(-theta) for time-triggered, ln M_T(theta) for
// event-triggered: the prefactor of the DoI tail bound.
double log_doi_prefactor(const Scenario& s, double theta) {
  if (s.policy.is_time_triggered()) {
    const auto env = envelopes_for(s, theta, true);
    return log_aoi_mgf_bound(env, env.rho_A_upper) + log_residual_mgf(s.event_model, theta);
  }
  return log_delay_mgf_bound(envelopes_for(s, theta, false));
}

double log_event_decay(const Scenario& s, double theta) {
  const double log_mi = log_mgf(s.event_model, -theta);
  if (!(log_mi < 0.0)) throw InfiniteDoI("M_I(-theta) == 1: no finite DoI threshold");
  return log_mi;
}

}  // namespace

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::Delay:
      return "delay";
    case Metric::PeakAoI:
      return "aoi";
    case Metric::PeakDoI:
      return "doi";
  }
  return "unknown";
}

double Scenario::utilization() const {
  const double mean_service = service_model.mean();
  if (const auto* tt = std::get_if<TimeTriggered>(&policy.kind())) return mean_service / tt->w;
  const double alpha = std::get<EventTriggered>(policy.kind()).alpha;
  return mean_service / (alpha * event_model.mean());
}

double log_delay_mgf_bound(const EnvelopeSet& env) {
  require_stable(env);
  return env.theta * (env.sigma_S + env.rho_S) + log_geometric_factor(env);
}

double delay_mgf_bound(const EnvelopeSet& env) { return std::exp(log_delay_mgf_bound(env)); }

double log_aoi_mgf_bound(const EnvelopeSet& env, double rho_A_upper) {
  require_stable(env);
  if (!std::isfinite(rho_A_upper)) throw DomainError("upper arrival envelope diverges at this theta");
  const double queued = env.theta * (env.sigma_S + 2.0 * env.rho_S) + log_geometric_factor(env);
  const double idle = env.theta * (env.sigma_S + env.rho_S + rho_A_upper);
  return log_sum_exp(queued, idle);
}

double aoi_mgf_bound(const EnvelopeSet& env, double rho_A_upper) {
  return std::exp(log_aoi_mgf_bound(env, rho_A_upper));
}

double invert_log_to_quantile(double log_mgf_bound, double theta, double epsilon) {
  if (!(theta > 0.0)) throw ArgumentError("theta must be > 0");
  require_epsilon(epsilon);
  return (log_mgf_bound - std::log(epsilon)) / theta;
}

double invert_to_quantile(double mgf_bound_value, double theta, double epsilon) {
  if (!(mgf_bound_value > 0.0)) throw ArgumentError("MGF bound must be > 0");
  return invert_log_to_quantile(std::log(mgf_bound_value), theta, epsilon);
}

double doi_tail_probability(const Scenario& scenario, double theta, long long phi) {
  if (phi < 0) throw ArgumentError("phi must be >= 0");
  double exponent = static_cast<double>(phi);
  if (!scenario.policy.is_time_triggered()) {
    const double alpha = scenario.policy.parameter();
    if (static_cast<double>(phi) < alpha - 1.0) {
      throw ArgumentError("event-triggered DoI threshold must be >= alpha - 1");
    }
    exponent = static_cast<double>(phi) - alpha + 1.0;
  }
  const double log_prefactor = log_doi_prefactor(scenario, theta);
  return std::exp(log_prefactor + exponent * log_mgf(scenario.event_model, -theta));
}

DoiBound doi_epsilon_bound(const Scenario& scenario, double theta) {
  require_epsilon(scenario.epsilon);
  const double log_prefactor = log_doi_prefactor(scenario, theta);
  const double log_mi = log_event_decay(scenario, theta);
  const double x = (std::log(scenario.epsilon) - log_prefactor) / log_mi;
  if (scenario.policy.is_time_triggered()) {
    return {x, std::max(0LL, static_cast<long long>(std::ceil(x)))};
  }
  const double alpha = scenario.policy.parameter();
  const double floor_int = std::ceil(alpha - 1.0);
  const double ceiled = scenario.policy.has_integer_alpha() ? std::ceil(x) + alpha - 1.0
                                                            : std::ceil(x + alpha - 1.0);
  return {x + alpha - 1.0, static_cast<long long>(std::max(floor_int, ceiled))};
}

double bound_at_theta(const Scenario& scenario, Metric metric, double theta) {
  switch (metric) {
    case Metric::Delay:
      return invert_log_to_quantile(log_delay_mgf_bound(envelopes_for(scenario, theta, false)), theta,
                                    scenario.epsilon);
    case Metric::PeakAoI: {
      const auto env = envelopes_for(scenario, theta, true);
      return invert_log_to_quantile(log_aoi_mgf_bound(env, env.rho_A_upper), theta, scenario.epsilon);
    }
    case Metric::PeakDoI:
      return doi_epsilon_bound(scenario, theta).phi_real;
  }
  throw ArgumentError("unknown metric");
}

ThetaInterval theta_search_interval(const Scenario& scenario, Metric metric) {
  double singularity = scenario.service_model.mgf_singularity();
  if (metric == Metric::PeakAoI && !scenario.policy.is_time_triggered()) {
    singularity = std::min(singularity, scenario.event_model.mgf_singularity());
  }
  const double hi = std::isfinite(singularity) ? singularity - 2.0 * kMgfGuard : kThetaCap;
  if (!(hi > 0.0)) throw NoFeasibleTheta("MGF domain is empty");
  const double lo = kThetaDecades * std::min(hi, 1.0 / scenario.service_model.mean());
  return {lo, hi};
}

BoundResult optimize_theta(const Scenario& scenario, Metric metric) {
  require_epsilon(scenario.epsilon);
  const auto interval = theta_search_interval(scenario, metric);
  auto objective = [&](double theta) {
    try {
      const double v = bound_at_theta(scenario, metric, theta);
      return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    } catch (const InstabilityError&) {
      return std::numeric_limits<double>::infinity();
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const auto best = grid_golden_minimize(objective, interval.lo, interval.hi, kThetaGridPoints, kThetaRelTol);
  if (!std::isfinite(best.fx)) {
    std::ostringstream msg;
    msg << "no theta in (" << interval.lo << ", " << interval.hi << ") satisfies stability; utilization="
        << scenario.utilization();
    throw NoFeasibleTheta(msg.str());
  }

  BoundResult result;
  result.theta_star = best.x;
  result.value = best.fx;
  result.epsilon = scenario.epsilon;
  result.metric = metric;
  result.vacuous = scenario.epsilon >= 1.0;
  if (metric == Metric::PeakDoI) result.value_int = doi_epsilon_bound(scenario, best.x).phi_int;
  return result;
}

double exact_mm1_tail(double lambda, double mu, double epsilon) {
  if (!(lambda > 0.0 && mu > 0.0)) throw ArgumentError("M|M|1 rates must be > 0");
  if (lambda >= mu) throw ArgumentError("M|M|1 queue requires lambda < mu");
  require_epsilon(epsilon);
  return -std::log(epsilon) / (mu - lambda);
}

}  // namespace aoi
