#pragma once

#include <string>
#include <variant>

namespace aoi {

struct Exponential {
  double rate;
};

struct Deterministic {
  double value;
};

struct Erlang {
  int shape;
  double rate;
};

// Arguments closer than this to an MGF singularity are rejected.
inline constexpr double kMgfGuard = 1e-9;

/// A nonnegative random variable (inter-event time or service time) with a
/// closed-form moment generating function.
class DistributionModel {
 public:
  using Kind = std::variant<Exponential, Deterministic, Erlang>;

  static DistributionModel exponential(double rate);
  static DistributionModel deterministic(double value);
  static DistributionModel erlang(int shape, double rate);

  const Kind& kind() const { return kind_; }

  double mean() const;

  /// Right end of the open theta interval where the MGF is finite
  /// (+inf for deterministic values).
  double mgf_singularity() const;

  bool is_memoryless() const { return std::holds_alternative<Exponential>(kind_); }
  bool is_deterministic() const { return std::holds_alternative<Deterministic>(kind_); }

  std::string name() const;

  bool operator==(const DistributionModel& other) const;

 private:
  explicit DistributionModel(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// E[exp(theta X)]. Throws DomainError when theta is within kMgfGuard of the
/// singularity or beyond it.
double mgf_eval(const DistributionModel& model, double theta);

/// ln E[exp(theta X)], computed without forming the MGF itself so that large
/// arguments of deterministic models do not overflow.
double log_mgf(const DistributionModel& model, double theta);

/// Time-triggered sampling at A(n) = n w.
struct TimeTriggered {
  double w;
};

/// Event-triggered sampling at A(n) = E(n alpha). Bound computations accept
/// real alpha >= 1 (sweeps couple alpha = lambda w without rounding); the
/// simulator requires an integer.
struct EventTriggered {
  double alpha;
};

class TriggerPolicy {
 public:
  using Kind = std::variant<TimeTriggered, EventTriggered>;

  static TriggerPolicy time_triggered(double w);
  static TriggerPolicy event_triggered(double alpha);

  const Kind& kind() const { return kind_; }
  bool is_time_triggered() const { return std::holds_alternative<TimeTriggered>(kind_); }

  // w for time-triggered, alpha for event-triggered.
  double parameter() const;
  bool has_integer_alpha() const;

  // "tt" or "et"
  std::string short_name() const;

 private:
  explicit TriggerPolicy(Kind kind) : kind_(kind) {}
  Kind kind_;
};

}  // namespace aoi
