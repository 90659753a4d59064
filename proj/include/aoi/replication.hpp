#pragma once

#include <cstdint>

#include "aoi/bounds.hpp"
#include "aoi/empirical_tail.hpp"

namespace aoi {

struct SimulationOptions {
  // Updates discarded at the start of every replication.
  std::int64_t burn_in = 10000;
  // 0 selects the hardware concurrency.
  unsigned workers = 0;
  // Pooled sample counts above this switch the tails to histogram mode.
  std::uint64_t exact_limit = 10'000'000;
};

struct MetricTails {
  EmpiricalTail delay;
  EmpiricalTail aoi;
  EmpiricalTail doi;

  void merge(const MetricTails& other);
};

/// Streams one replication from an empty queue: burn_in + n_updates + 1
/// updates are simulated and n_updates samples of each of T(n), Delta(n) and
/// Phi(n) are recorded after the burn-in. Event times are generated lazily and
/// dropped once both count cursors have passed them.
void simulate_replication(const Scenario& scenario, std::int64_t n_updates, std::int64_t burn_in,
                          std::uint64_t events_seed, std::uint64_t service_seed, MetricTails& out);

/// Runs n_reps independent replications of n_updates recorded samples each.
/// Replication r draws events from derive_seed(base_seed, r, Events) and
/// service times from derive_seed(base_seed, r, Service). Results are pooled
/// in replication order, so they are identical for any worker count. When the
/// pooled size exceeds options.exact_limit, replication 0 runs first and fixes
/// the histogram range [0, 2 max) for every metric.
MetricTails run_replications(const Scenario& scenario, std::int64_t n_updates, int n_reps,
                             std::uint64_t base_seed, const SimulationOptions& options = {});

}  // namespace aoi
