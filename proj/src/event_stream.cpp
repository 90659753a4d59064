#include "aoi/event_stream.hpp"

#include <limits>
#include <string>

#include "aoi/errors.hpp"

namespace aoi {

EventStream::EventStream(DistributionModel model, std::uint64_t seed, std::int64_t max_events)
    : max_events_(max_events) {
  if (const auto* d = std::get_if<Deterministic>(&model.kind())) step_ = d->value;
  sampler_.emplace(std::move(model), seed);
}

EventStream EventStream::from_times(std::vector<double> times) {
  EventStream stream;
  double previous = 0.0;
  for (double t : times) {
    if (!(t >= previous)) throw ArgumentError("event times must be nondecreasing and >= 0");
    previous = t;
  }
  stream.times_.assign(times.begin(), times.end());
  stream.generated_ = static_cast<std::int64_t>(times.size());
  stream.explicit_list_ = true;
  return stream;
}

double EventStream::time_of(std::int64_t k) {
  if (k == 0) return 0.0;
  if (k < 0) throw ArgumentError("event index must be >= 0");
  if (max_events_ > 0 && k > max_events_) {
    throw EventStreamExhausted("event " + std::to_string(k) + " requested from a stream capped at " +
                               std::to_string(max_events_));
  }
  if (step_) return static_cast<double>(k) * *step_;
  if (k < first_) throw ArgumentError("event " + std::to_string(k) + " was already released");
  if (explicit_list_) {
    if (k > generated_) return std::numeric_limits<double>::infinity();
    return times_[static_cast<std::size_t>(k - first_)];
  }
  while (generated_ < k) {
    last_time_ += (*sampler_)();
    times_.push_back(last_time_);
    ++generated_;
  }
  return times_[static_cast<std::size_t>(k - first_)];
}

void EventStream::release_before(std::int64_t k) {
  if (step_) return;
  while (first_ < k && !times_.empty()) {
    times_.pop_front();
    ++first_;
  }
  if (first_ < k && !explicit_list_) {
    // Nothing stored: skip ahead lazily by generating and dropping.
    while (generated_ < k - 1) {
      last_time_ += (*sampler_)();
      ++generated_;
    }
    first_ = k;
  }
}

std::int64_t EventCounter::count_at(double t) {
  if (t < last_t_) throw ArgumentError("EventCounter instants must be nondecreasing");
  last_t_ = t;
  while (stream_->time_of(count_ + 1) <= t) ++count_;
  return count_;
}

}  // namespace aoi
