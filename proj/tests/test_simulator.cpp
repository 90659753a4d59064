#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "aoi/event_stream.hpp"
#include "aoi/simulator.hpp"

using namespace aoi;

namespace {

// Max-plus server: D(n) = max_{k <= n} [A(k) + L(k) + ... + L(n)].
std::vector<double> brute_departures(const std::vector<double>& a, const std::vector<double>& l) {
  std::vector<double> d(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    double best = -1.0;
    for (std::size_t k = 0; k <= n; ++k) {
      double sum = a[k];
      for (std::size_t j = k; j <= n; ++j) sum += l[j];
      best = std::max(best, sum);
    }
    d[n] = best;
  }
  return d;
}

UpdateTrace with_arrivals(std::vector<double> a) {
  UpdateTrace t;
  t.arrival = std::move(a);
  t.sampled_count.assign(t.arrival.size(), 0);
  return t;
}

}  // namespace

TEST_CASE("generate_arrivals") {
  SUBCASE("time-triggered with synchronized deterministic events") {
    EventStream events(DistributionModel::deterministic(2.0), 0);
    const auto t = generate_arrivals(TriggerPolicy::time_triggered(2.0), events, 4);
    CHECK(t.arrival == std::vector<double>{2, 4, 6, 8});
    CHECK(t.sampled_count == std::vector<std::int64_t>{1, 2, 3, 4});
  }
  SUBCASE("event-triggered counts are multiples of alpha") {
    EventStream events(DistributionModel::exponential(1.0), 5);
    const auto t = generate_arrivals(TriggerPolicy::event_triggered(3.0), events, 4);
    CHECK(t.sampled_count == std::vector<std::int64_t>{3, 6, 9, 12});
    CHECK(std::is_sorted(t.arrival.begin(), t.arrival.end()));
  }
  SUBCASE("time-triggered count over an explicit list") {
    auto events = EventStream::from_times({1.0, 2.0, 9.0});
    const auto t = generate_arrivals(TriggerPolicy::time_triggered(5.0), events, 2);
    CHECK(t.sampled_count[0] == 2);
    CHECK(t.sampled_count[1] == 3);
  }
}

TEST_CASE("fifo_service hand examples") {
  const std::vector<double> ones{1, 1, 1};
  CHECK(fifo_service(with_arrivals({1, 2, 3}), ones).departure == std::vector<double>{2, 3, 4});
  const std::vector<double> twos{2, 2, 2};
  CHECK(fifo_service(with_arrivals({1, 1.1, 1.2}), twos).departure == std::vector<double>{3, 5, 7});

  EventStream events(DistributionModel::deterministic(2.0), 0);
  auto trace = generate_arrivals(TriggerPolicy::time_triggered(6.0), events, 50);
  trace = fifo_service(std::move(trace), DistributionModel::deterministic(4.0), 1);
  for (std::size_t n = 0; n < trace.size(); ++n) CHECK(trace.departure[n] - trace.arrival[n] == doctest::Approx(4.0));
}

TEST_CASE("peak_metrics hand example") {
  auto trace = with_arrivals({2, 4});
  trace.sampled_count = {1, 2};
  trace.departure = {3, 5};
  auto events = EventStream::from_times({1.0, 2.5, 4.5});
  const auto p = peak_metrics(trace, events);
  CHECK(p.delay == std::vector<double>{1, 1});
  REQUIRE(p.aoi.size() == 1);
  CHECK(p.aoi[0] == 3.0);
  CHECK(p.doi[0] == 2);
  CHECK(trace.count_at_departure == std::vector<std::int64_t>{2, 3});
}

TEST_CASE("Lindley recursion equals brute-force max-plus evaluation on random traces") {
  std::mt19937_64 gen(2718);
  std::uniform_int_distribution<int> len(1, 50);
  std::exponential_distribution<double> gap(1.0);
  std::exponential_distribution<double> work(0.8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(gen);
    std::vector<double> a(n);
    std::vector<double> l(n);
    double t = 0.0;
    for (int i = 0; i < n; ++i) {
      t += (trial % 3 == 0) ? 1.0 : gap(gen);
      a[i] = t;
      l[i] = work(gen);
    }
    const auto d = fifo_service(with_arrivals(a), l).departure;
    const auto ref = brute_departures(a, l);
    for (int i = 0; i < n; ++i) CHECK(d[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("trace invariants for random scenarios") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const bool et = seed % 2 == 0;
    const auto policy = et ? TriggerPolicy::event_triggered(1.0 + static_cast<double>(seed % 5))
                           : TriggerPolicy::time_triggered(1.0 + 0.3 * static_cast<double>(seed));
    EventStream events(DistributionModel::exponential(1.0), seed);
    auto trace = generate_arrivals(policy, events, 2000);
    trace = fifo_service(std::move(trace), DistributionModel::exponential(1.0 / (0.6 * policy.parameter())),
                         seed + 100);
    const auto p = peak_metrics(trace, events);
    for (std::size_t n = 0; n < p.aoi.size(); ++n) {
      CHECK(trace.departure[n] >= trace.arrival[n]);
      CHECK(trace.departure[n + 1] >= trace.departure[n]);
      CHECK(p.aoi[n] >= p.delay[n + 1]);
      if (et) CHECK(p.doi[n] >= static_cast<std::int64_t>(policy.parameter()));
      if (!et) CHECK(p.aoi[n] >= policy.parameter() * (1 - 1e-12));
    }
  }
}
