#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "aoi/distribution.hpp"
#include "aoi/rng.hpp"

namespace aoi {

/// Sensor event times E(0) = 0 <= E(1) <= E(2) <= ..., generated lazily from
/// iid inter-event times. Times that were released are forgotten, so a
/// streaming consumer runs in memory proportional to the look-ahead window.
class EventStream {
 public:
  /// max_events > 0 caps the stream; asking for a later event throws
  /// EventStreamExhausted.
  EventStream(DistributionModel model, std::uint64_t seed, std::int64_t max_events = 0);

  /// A stream whose events are exactly `times` (nondecreasing, >= 0) and
  /// which has no events afterwards.
  static EventStream from_times(std::vector<double> times);

  /// E(k). Deterministic models give k * value exactly, without accumulated
  /// rounding. Returns +inf past the end of an explicit list.
  double time_of(std::int64_t k);

  /// Forget E(j) for j < k.
  void release_before(std::int64_t k);

  std::int64_t stored() const { return static_cast<std::int64_t>(times_.size()); }

 private:
  EventStream() = default;

  std::optional<VariateSampler> sampler_;
  std::optional<double> step_;
  // times_[i] holds E(first_ + i).
  std::deque<double> times_;
  std::int64_t first_ = 1;
  std::int64_t generated_ = 0;
  double last_time_ = 0.0;
  std::int64_t max_events_ = 0;
  bool explicit_list_ = false;
};

/// Forward cursor evaluating the event count C(t) = max{n >= 0 : E(n) <= t}
/// at nondecreasing instants.
class EventCounter {
 public:
  explicit EventCounter(EventStream& stream) : stream_(&stream) {}

  std::int64_t count_at(double t);

  std::int64_t count() const { return count_; }

 private:
  EventStream* stream_;
  std::int64_t count_ = 0;
  double last_t_ = 0.0;
};

}  // namespace aoi
