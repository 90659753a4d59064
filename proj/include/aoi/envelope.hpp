#pragma once

#include "aoi/distribution.hpp"

namespace aoi {

/// (sigma, rho) envelope parameters of arrivals and service at one theta.
struct EnvelopeSet {
  double theta = 0.0;
  double sigma_S = 0.0;
  double rho_S = 0.0;
  double rho_A_lower = 0.0;
  // +inf when the upper arrival envelope was not requested or diverges.
  double rho_A_upper = 0.0;
  bool stable = false;
};

struct ServiceEnvelope {
  double sigma_S;
  double rho_S;
};

struct ArrivalEnvelopes {
  double rho_A_lower;
  double rho_A_upper;
};

/// Envelope of S(nu, n) = sum of iid service times: sigma = 0 and
/// rho = ln(M_L(theta)) / theta. Deterministic service gives rho = l exactly.
ServiceEnvelope service_envelope(const DistributionModel& service, double theta);

/// Lower and upper arrival envelope rates. Time-triggered policies return
/// (w, w) and ignore event_model. Throws DomainError when the upper rate of an
/// event-triggered policy diverges at theta.
ArrivalEnvelopes arrival_envelopes(const TriggerPolicy& policy, const DistributionModel& event_model,
                                   double theta);

/// rho_A_lower(-theta) alone; defined for every theta > 0.
double arrival_lower_envelope(const TriggerPolicy& policy, const DistributionModel& event_model,
                              double theta);

/// Estimate of M_J(-theta) for the residual inter-event time: exact for
/// exponential events, the conservative value 1 otherwise.
double residual_mgf(const DistributionModel& event_model, double theta);
double log_residual_mgf(const DistributionModel& event_model, double theta);

/// True iff rho_A_lower > rho_S strictly.
bool stability_check(const EnvelopeSet& env);

/// Evaluates every envelope quantity at theta. With with_upper == false the
/// upper arrival rate is left at +inf and never evaluated.
EnvelopeSet evaluate_envelopes(const TriggerPolicy& policy, const DistributionModel& event_model,
                               const DistributionModel& service_model, double theta, bool with_upper);

}  // namespace aoi
