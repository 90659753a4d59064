#pragma once

#include <optional>
#include <string_view>

#include "aoi/distribution.hpp"
#include "aoi/envelope.hpp"

namespace aoi {

enum class Metric { Delay, PeakAoI, PeakDoI };

// "delay", "aoi" or "doi"
std::string_view metric_name(Metric metric);

/// One sampling system: sensor events, sampling policy and a FIFO queue.
struct Scenario {
  DistributionModel event_model;
  DistributionModel service_model;
  TriggerPolicy policy;
  double epsilon;

  /// Mean service time divided by mean inter-update time:
  /// 1/(w mu) for time-triggered and lambda/(alpha mu) for event-triggered.
  double utilization() const;
};

struct BoundResult {
  double theta_star = 0.0;
  // Time units for delay and AoI, event counts (real-valued) for DoI.
  double value = 0.0;
  // Ceiled DoI threshold, only set for Metric::PeakDoI.
  std::optional<long long> value_int;
  double epsilon = 0.0;
  Metric metric = Metric::Delay;
  // epsilon >= 1: the inversion carries no information.
  bool vacuous = false;
};

struct DoiBound {
  double phi_real;
  long long phi_int;
};

/// MGF bound of the sojourn time:
///   exp(theta (sigma_S + rho_S)) / (1 - exp(-theta (rho_A_lower - rho_S))).
/// Throws InstabilityError unless env is stable.
double delay_mgf_bound(const EnvelopeSet& env);
double log_delay_mgf_bound(const EnvelopeSet& env);

/// MGF bound of the peak AoI: the delay-like geometric term with a second
/// service envelope plus exp(theta (sigma_S + rho_S + rho_A_upper)).
double aoi_mgf_bound(const EnvelopeSet& env, double rho_A_upper);
double log_aoi_mgf_bound(const EnvelopeSet& env, double rho_A_upper);

/// Chernoff inversion (ln M - ln epsilon) / theta.
double invert_to_quantile(double mgf_bound_value, double theta, double epsilon);
double invert_log_to_quantile(double log_mgf_bound, double theta, double epsilon);

/// Upper bound on P[Phi(n) > phi] at theta. Time-triggered:
/// M_Delta M_J(-theta) M_I(-theta)^phi; event-triggered (phi >= alpha - 1):
/// M_T M_I(-theta)^(phi - alpha + 1). Values above 1 are returned unclamped.
double doi_tail_probability(const Scenario& scenario, double theta, long long phi);

/// Smallest DoI threshold certified at theta: the real-valued solution of
/// tail_probability == epsilon and its ceiling (floored at 0 for
/// time-triggered, alpha - 1 for event-triggered).
DoiBound doi_epsilon_bound(const Scenario& scenario, double theta);

/// T_eps(theta), Delta_eps(theta) or the real-valued Phi_eps(theta).
/// Throws InstabilityError or DomainError when theta cannot certify a bound.
double bound_at_theta(const Scenario& scenario, Metric metric, double theta);

struct ThetaInterval {
  double lo;
  double hi;
};

/// Search interval for the Chernoff parameter: hi sits 2 guard bands below the
/// nearest MGF singularity the metric touches (capped at 1e3 when none is
/// finite), lo is six decades below min(hi, 1 / mean service time).
ThetaInterval theta_search_interval(const Scenario& scenario, Metric metric);

/// Minimises bound_at_theta over the search interval: 200-point log grid then
/// golden-section refinement to relative tolerance 1e-6. Throws
/// NoFeasibleTheta when no probe satisfies stability.
BoundResult optimize_theta(const Scenario& scenario, Metric metric);

/// Exact sojourn-time quantile of the M|M|1 queue, -ln(epsilon) / (mu - lambda).
double exact_mm1_tail(double lambda, double mu, double epsilon);

}  // namespace aoi
