#include "aoi/distribution.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "aoi/errors.hpp"

namespace aoi {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite_positive(double x, const char* what) {
  if (!(std::isfinite(x) && x > 0.0)) {
    throw ArgumentError(std::string(what) + " must be finite and > 0");
  }
}

void check_below_singularity(double rate, double theta) {
  if (theta >= rate - kMgfGuard) {
    std::ostringstream msg;
    msg << "MGF diverges: theta=" << theta << " at or beyond rate=" << rate;
    throw DomainError(msg.str());
  }
}

// ln(rate / (rate - theta))
double log_exponential_mgf(double rate, double theta) {
  check_below_singularity(rate, theta);
  return -std::log1p(-theta / rate);
}

}  // namespace

DistributionModel DistributionModel::exponential(double rate) {
  require_finite_positive(rate, "exponential rate");
  return DistributionModel(Exponential{rate});
}

DistributionModel DistributionModel::deterministic(double value) {
  require_finite_positive(value, "deterministic value");
  return DistributionModel(Deterministic{value});
}

DistributionModel DistributionModel::erlang(int shape, double rate) {
  if (shape < 1) throw ArgumentError("erlang shape must be >= 1");
  require_finite_positive(rate, "erlang rate");
  return DistributionModel(Erlang{shape, rate});
}

double DistributionModel::mean() const {
  return std::visit(Overloaded{
                        [](const Exponential& e) { return 1.0 / e.rate; },
                        [](const Deterministic& d) { return d.value; },
                        [](const Erlang& e) { return e.shape / e.rate; },
                    },
                    kind_);
}

double DistributionModel::mgf_singularity() const {
  return std::visit(Overloaded{
                        [](const Exponential& e) { return e.rate; },
                        [](const Deterministic&) { return std::numeric_limits<double>::infinity(); },
                        [](const Erlang& e) { return e.rate; },
                    },
                    kind_);
}

std::string DistributionModel::name() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Exponential& e) { os << "exponential(rate=" << e.rate << ")"; },
                 [&](const Deterministic& d) { os << "deterministic(value=" << d.value << ")"; },
                 [&](const Erlang& e) { os << "erlang(shape=" << e.shape << ",rate=" << e.rate << ")"; },
             },
             kind_);
  return os.str();
}

bool DistributionModel::operator==(const DistributionModel& other) const {
  if (kind_.index() != other.kind_.index()) return false;
  return std::visit(Overloaded{
                        [&](const Exponential& e) { return e.rate == std::get<Exponential>(other.kind_).rate; },
                        [&](const Deterministic& d) {
                          return d.value == std::get<Deterministic>(other.kind_).value;
                        },
                        [&](const Erlang& e) {
                          const auto& o = std::get<Erlang>(other.kind_);
                          return e.shape == o.shape && e.rate == o.rate;
                        },
                    },
                    kind_);
}

double log_mgf(const DistributionModel& model, double theta) {
  if (std::isnan(theta)) throw ArgumentError("theta is NaN");
  return std::visit(Overloaded{
                        [&](const Exponential& e) { return log_exponential_mgf(e.rate, theta); },
                        [&](const Deterministic& d) { return theta * d.value; },
                        [&](const Erlang& e) { return e.shape * log_exponential_mgf(e.rate, theta); },
                    },
                    model.kind());
}

double mgf_eval(const DistributionModel& model, double theta) {
  return std::visit(Overloaded{
                        [&](const Exponential& e) {
                          check_below_singularity(e.rate, theta);
                          return e.rate / (e.rate - theta);
                        },
                        [&](const Deterministic& d) { return std::exp(theta * d.value); },
                        [&](const Erlang& e) {
                          check_below_singularity(e.rate, theta);
                          return std::pow(e.rate / (e.rate - theta), e.shape);
                        },
                    },
                    model.kind());
}

TriggerPolicy TriggerPolicy::time_triggered(double w) {
  require_finite_positive(w, "update interval w");
  return TriggerPolicy(TimeTriggered{w});
}

TriggerPolicy TriggerPolicy::event_triggered(double alpha) {
  if (!(std::isfinite(alpha) && alpha >= 1.0)) {
    throw ArgumentError("event threshold alpha must be >= 1");
  }
  return TriggerPolicy(EventTriggered{alpha});
}

double TriggerPolicy::parameter() const {
  return std::visit(Overloaded{
                        [](const TimeTriggered& t) { return t.w; },
                        [](const EventTriggered& e) { return e.alpha; },
                    },
                    kind_);
}

bool TriggerPolicy::has_integer_alpha() const {
  const auto* et = std::get_if<EventTriggered>(&kind_);
  return et != nullptr && std::floor(et->alpha) == et->alpha;
}

std::string TriggerPolicy::short_name() const { return is_time_triggered() ? "tt" : "et"; }

}  // namespace aoi
