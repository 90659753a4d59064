#include "aoi/envelope.hpp"

#include <cmath>
#include <limits>

#include "aoi/errors.hpp"

namespace aoi {

namespace {

void require_positive_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ArgumentError("theta must be finite and > 0");
}

}  // namespace

ServiceEnvelope service_envelope(const DistributionModel& service, double theta) {
  require_positive_theta(theta);
  if (const auto* d = std::get_if<Deterministic>(&service.kind())) return {0.0, d->value};
  return {0.0, log_mgf(service, theta) / theta};
}

double arrival_lower_envelope(const TriggerPolicy& policy, const DistributionModel& event_model,
                              double theta) {
  require_positive_theta(theta);
  if (const auto* tt = std::get_if<TimeTriggered>(&policy.kind())) return tt->w;
  const double alpha = std::get<EventTriggered>(policy.kind()).alpha;
  if (const auto* d = std::get_if<Deterministic>(&event_model.kind())) return alpha * d->value;
  return -(alpha / theta) * log_mgf(event_model, -theta);
}

ArrivalEnvelopes arrival_envelopes(const TriggerPolicy& policy, const DistributionModel& event_model,
                                   double theta) {
  const double lower = arrival_lower_envelope(policy, event_model, theta);
  if (policy.is_time_triggered()) return {lower, lower};
  const double alpha = std::get<EventTriggered>(policy.kind()).alpha;
  if (const auto* d = std::get_if<Deterministic>(&event_model.kind())) return {lower, alpha * d->value};
  return {lower, (alpha / theta) * log_mgf(event_model, theta)};
}

double residual_mgf(const DistributionModel& event_model, double theta) {
  return std::exp(log_residual_mgf(event_model, theta));
}

double log_residual_mgf(const DistributionModel& event_model, double theta) {
  require_positive_theta(theta);
  if (event_model.is_memoryless()) return log_mgf(event_model, -theta);
  return 0.0;
}

bool stability_check(const EnvelopeSet& env) { return env.rho_A_lower > env.rho_S; }

EnvelopeSet evaluate_envelopes(const TriggerPolicy& policy, const DistributionModel& event_model,
                               const DistributionModel& service_model, double theta, bool with_upper) {
  EnvelopeSet env;
  env.theta = theta;
  const auto service = service_envelope(service_model, theta);
  env.sigma_S = service.sigma_S;
  env.rho_S = service.rho_S;
  if (with_upper) {
    const auto arrivals = arrival_envelopes(policy, event_model, theta);
    env.rho_A_lower = arrivals.rho_A_lower;
    env.rho_A_upper = arrivals.rho_A_upper;
  } else {
    env.rho_A_lower = arrival_lower_envelope(policy, event_model, theta);
    env.rho_A_upper = std::numeric_limits<double>::infinity();
  }
  env.stable = stability_check(env);
  return env;
}

}  // namespace aoi
