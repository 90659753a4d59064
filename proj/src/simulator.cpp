#include "aoi/simulator.hpp"

#include <cmath>

#include "aoi/errors.hpp"
#include "aoi/rng.hpp"

namespace aoi {

UpdateTrace generate_arrivals(const TriggerPolicy& policy, EventStream& events, std::int64_t n_updates) {
  if (n_updates < 1) throw ArgumentError("n_updates must be >= 1");
  UpdateTrace trace;
  trace.arrival.reserve(static_cast<std::size_t>(n_updates));
  trace.sampled_count.reserve(static_cast<std::size_t>(n_updates));
  if (const auto* tt = std::get_if<TimeTriggered>(&policy.kind())) {
    EventCounter counter(events);
    for (std::int64_t n = 1; n <= n_updates; ++n) {
      const double a = static_cast<double>(n) * tt->w;
      trace.arrival.push_back(a);
      trace.sampled_count.push_back(counter.count_at(a));
    }
    return trace;
  }
  if (!policy.has_integer_alpha()) throw ArgumentError("simulation requires an integer alpha");
  const auto alpha = static_cast<std::int64_t>(policy.parameter());
  for (std::int64_t n = 1; n <= n_updates; ++n) {
    trace.arrival.push_back(events.time_of(n * alpha));
    trace.sampled_count.push_back(n * alpha);
  }
  return trace;
}

UpdateTrace fifo_service(UpdateTrace trace, const DistributionModel& service_model, std::uint64_t seed) {
  VariateSampler draw(service_model, seed);
  trace.departure.resize(trace.size());
  double previous = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    previous = fifo_departure(trace.arrival[i], previous, draw());
    trace.departure[i] = previous;
  }
  return trace;
}

UpdateTrace fifo_service(UpdateTrace trace, std::span<const double> service_times) {
  if (service_times.size() != trace.size()) throw ArgumentError("one service time per update required");
  trace.departure.resize(trace.size());
  double previous = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!(service_times[i] >= 0.0)) throw ArgumentError("service times must be >= 0");
    previous = fifo_departure(trace.arrival[i], previous, service_times[i]);
    trace.departure[i] = previous;
  }
  return trace;
}

PeakSamples peak_metrics(UpdateTrace& trace, EventStream& events) {
  const std::size_t n = trace.size();
  if (n < 2) throw ArgumentError("peak metrics need at least two updates");
  if (trace.departure.size() != n || trace.sampled_count.size() != n) {
    throw ArgumentError("trace is incomplete: run generate_arrivals and fifo_service first");
  }
  EventCounter counter(events);
  trace.count_at_departure.resize(n);
  for (std::size_t i = 0; i < n; ++i) trace.count_at_departure[i] = counter.count_at(trace.departure[i]);

  PeakSamples out;
  out.delay.resize(n);
  out.aoi.resize(n - 1);
  out.doi.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) out.delay[i] = trace.departure[i] - trace.arrival[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.aoi[i] = trace.departure[i + 1] - trace.arrival[i];
    out.doi[i] = trace.count_at_departure[i + 1] - trace.sampled_count[i];
  }
  return out;
}

}  // namespace aoi
