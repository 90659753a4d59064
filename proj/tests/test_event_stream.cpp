#include <doctest.h>

#include <cmath>
#include <vector>

#include "aoi/errors.hpp"
#include "aoi/event_stream.hpp"

using namespace aoi;

TEST_CASE("deterministic stream has exact multiples") {
  EventStream s(DistributionModel::deterministic(0.1), 1);
  CHECK(s.time_of(0) == 0.0);
  CHECK(s.time_of(3) == 3 * 0.1);
  CHECK(s.time_of(1'000'000) == 1'000'000 * 0.1);
  CHECK(s.stored() == 0);
}

TEST_CASE("explicit event list and tie rule") {
  auto s = EventStream::from_times({1.0, 2.0, 9.0});
  CHECK(s.time_of(2) == 2.0);
  CHECK(std::isinf(s.time_of(4)));
  EventCounter c(s);
  CHECK(c.count_at(0.5) == 0);
  CHECK(c.count_at(2.0) == 2);
  CHECK(c.count_at(5.0) == 2);
  CHECK(c.count_at(9.0) == 3);
  CHECK(c.count_at(100.0) == 3);
}

TEST_CASE("counter rejects time going backwards") {
  auto s = EventStream::from_times({1.0, 2.0});
  EventCounter c(s);
  c.count_at(1.5);
  CHECK_THROWS_AS(c.count_at(1.0), ArgumentError);
}

TEST_CASE("random stream is reproducible and increasing") {
  EventStream a(DistributionModel::exponential(2.0), 42);
  EventStream b(DistributionModel::exponential(2.0), 42);
  double prev = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double t = a.time_of(k);
    CHECK(t == b.time_of(k));
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("released events cannot be read again and the cap is enforced") {
  EventStream s(DistributionModel::exponential(1.0), 3, 100);
  const double t50 = s.time_of(50);
  s.release_before(40);
  CHECK(s.time_of(50) == t50);
  CHECK_THROWS_AS(s.time_of(10), ArgumentError);
  CHECK_THROWS_AS(s.time_of(101), EventStreamExhausted);
}

TEST_CASE("two counters over a shared stream match a materialized count") {
  EventStream s(DistributionModel::exponential(1.0), 8);
  std::vector<double> times;
  {
    EventStream copy(DistributionModel::exponential(1.0), 8);
    for (int k = 1; k <= 5000; ++k) times.push_back(copy.time_of(k));
  }
  EventCounter early(s);
  EventCounter late(s);
  for (int i = 1; i < 400; ++i) {
    const double t = i * 10.0;
    const auto brute = [&](double x) {
      std::int64_t n = 0;
      for (double e : times) n += e <= x;
      return n;
    };
    CHECK(late.count_at(t) == brute(t));
    CHECK(early.count_at(t + 3.0) == brute(t + 3.0));
    s.release_before(std::min(late.count(), early.count()) + 1);
  }
  CHECK(s.stored() < 100);
}
