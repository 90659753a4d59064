#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aoi/distribution.hpp"
#include "aoi/event_stream.hpp"

namespace aoi {

/// Per-update time stamps and sensor counts. Index i holds update n = i + 1.
struct UpdateTrace {
  std::vector<double> arrival;                    // A(n)
  std::vector<std::int64_t> sampled_count;        // C(A(n))
  std::vector<double> departure;                  // D(n)
  std::vector<std::int64_t> count_at_departure;   // C(D(n))

  std::size_t size() const { return arrival.size(); }
};

struct PeakSamples {
  std::vector<double> delay;       // T(n) = D(n) - A(n), n = 1..N
  std::vector<double> aoi;         // Delta(n) = D(n+1) - A(n), n = 1..N-1
  std::vector<std::int64_t> doi;   // Phi(n) = C(D(n+1)) - C(A(n)), n = 1..N-1
};

/// A(n) and C(A(n)) for n = 1..n_updates. Time-triggered: A(n) = n w with
/// events at exactly A(n) counted. Event-triggered: A(n) = E(n alpha) and
/// C(A(n)) = n alpha; alpha must be an integer.
UpdateTrace generate_arrivals(const TriggerPolicy& policy, EventStream& events, std::int64_t n_updates);

/// One step of the single-server FIFO recursion D(n) = max(A(n), D(n-1)) + L(n).
inline double fifo_departure(double arrival, double previous_departure, double service_time) {
  return (arrival > previous_departure ? arrival : previous_departure) + service_time;
}

/// Fills D(n) with iid service times drawn from service_model.
UpdateTrace fifo_service(UpdateTrace trace, const DistributionModel& service_model, std::uint64_t seed);

/// Fills D(n) from explicit service times L(1..N).
UpdateTrace fifo_service(UpdateTrace trace, std::span<const double> service_times);

/// Evaluates T, Delta and Phi along a complete trace and records C(D(n)) in
/// it. `events` must be the stream the arrivals were generated from (or an
/// identical one); departures are scanned with a single forward cursor.
PeakSamples peak_metrics(UpdateTrace& trace, EventStream& events);

}  // namespace aoi
