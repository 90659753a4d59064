#include "aoi/replication.hpp"

#include <algorithm>
#include <vector>

#include "aoi/errors.hpp"
#include "aoi/event_stream.hpp"
#include "aoi/parallel.hpp"
#include "aoi/rng.hpp"
#include "aoi/simulator.hpp"

namespace aoi {

void MetricTails::merge(const MetricTails& other) {
  delay.merge(other.delay);
  aoi.merge(other.aoi);
  doi.merge(other.doi);
}

void simulate_replication(const Scenario& scenario, std::int64_t n_updates, std::int64_t burn_in,
                          std::uint64_t events_seed, std::uint64_t service_seed, MetricTails& out) {
  if (n_updates < 1) throw ArgumentError("n_updates must be >= 1");
  if (burn_in < 0) throw ArgumentError("burn_in must be >= 0");
  const bool time_triggered = scenario.policy.is_time_triggered();
  if (!time_triggered && !scenario.policy.has_integer_alpha()) {
    throw ArgumentError("simulation requires an integer alpha");
  }
  const double w = time_triggered ? scenario.policy.parameter() : 0.0;
  const auto alpha = time_triggered ? 0 : static_cast<std::int64_t>(scenario.policy.parameter());

  EventStream events(scenario.event_model, events_seed);
  VariateSampler service(scenario.service_model, service_seed);
  EventCounter arrival_counter(events);
  EventCounter departure_counter(events);

  out.delay.reserve(static_cast<std::size_t>(n_updates));
  out.aoi.reserve(static_cast<std::size_t>(n_updates));
  out.doi.reserve(static_cast<std::size_t>(n_updates));

  const std::int64_t last_recorded = burn_in + n_updates;
  double prev_arrival = 0.0;
  double prev_departure = 0.0;
  std::int64_t prev_sampled = 0;
  for (std::int64_t n = 1; n <= last_recorded + 1; ++n) {
    double arrival;
    std::int64_t sampled;
    if (time_triggered) {
      arrival = static_cast<double>(n) * w;
      sampled = arrival_counter.count_at(arrival);
    } else {
      sampled = n * alpha;
      arrival = events.time_of(sampled);
    }
    const double departure = fifo_departure(arrival, prev_departure, service());
    const std::int64_t departed_count = departure_counter.count_at(departure);

    if (n > burn_in && n <= last_recorded) out.delay.add(departure - arrival);
    if (n - 1 > burn_in) {
      out.aoi.add(departure - prev_arrival);
      out.doi.add(static_cast<double>(departed_count - prev_sampled));
    }
    // Phi(n) still needs C(A(n)); every earlier event can go.
    events.release_before(std::min(sampled, departure_counter.count()) + 1);

    prev_arrival = arrival;
    prev_departure = departure;
    prev_sampled = sampled;
  }
}

MetricTails run_replications(const Scenario& scenario, std::int64_t n_updates, int n_reps,
                             std::uint64_t base_seed, const SimulationOptions& options) {
  if (n_reps < 1) throw ArgumentError("n_reps must be >= 1");
  const auto reps = static_cast<std::size_t>(n_reps);
  std::vector<MetricTails> per_rep(reps);
  auto run = [&](std::size_t r) {
    simulate_replication(scenario, n_updates, options.burn_in, derive_seed(base_seed, r, StreamId::Events),
                         derive_seed(base_seed, r, StreamId::Service), per_rep[r]);
  };

  const auto pooled_size = static_cast<std::uint64_t>(n_updates) * reps;
  if (pooled_size <= options.exact_limit) {
    parallel_for(reps, options.workers, run);
    MetricTails pooled;
    pooled.delay.reserve(pooled_size);
    pooled.aoi.reserve(pooled_size);
    pooled.doi.reserve(pooled_size);
    for (auto& tails : per_rep) {
      pooled.merge(tails);
      tails = MetricTails{};
    }
    return pooled;
  }

  run(0);
  auto range_of = [](const EmpiricalTail& t) { return t.max() > 0.0 ? 2.0 * t.max() : 1.0; };
  const double delay_hi = range_of(per_rep[0].delay);
  const double aoi_hi = range_of(per_rep[0].aoi);
  const double doi_hi = range_of(per_rep[0].doi);
  auto bin = [&](MetricTails& t) {
    t.delay.convert_to_histogram(0.0, delay_hi);
    t.aoi.convert_to_histogram(0.0, aoi_hi);
    t.doi.convert_to_histogram(0.0, doi_hi);
  };
  bin(per_rep[0]);
  // Binning right after each run keeps at most `workers` exact replications alive.
  parallel_for(reps - 1, options.workers, [&](std::size_t i) {
    run(i + 1);
    bin(per_rep[i + 1]);
  });
  MetricTails pooled;
  for (std::size_t r = 0; r < reps; ++r) pooled.merge(per_rep[r]);
  return pooled;
}

}  // namespace aoi
