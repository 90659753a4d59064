#include "aoi/empirical_tail.hpp"

#include <algorithm>
#include <cmath>

#include "aoi/errors.hpp"

namespace aoi {

EmpiricalTail EmpiricalTail::from_samples(std::vector<double> samples) {
  EmpiricalTail tail;
  tail.reserve(samples.size());
  for (double x : samples) tail.add(x);
  return tail;
}

EmpiricalTail EmpiricalTail::histogram(double lo, double hi) {
  if (!(hi > lo)) throw ArgumentError("histogram range needs hi > lo");
  EmpiricalTail tail;
  tail.bins_.assign(kHistogramBins, 0);
  tail.lo_ = lo;
  tail.hi_ = hi;
  return tail;
}

void EmpiricalTail::reserve(std::size_t n) {
  if (!is_histogram()) samples_.reserve(n);
}

std::size_t EmpiricalTail::bin_of(double x) const {
  const double width = (hi_ - lo_) / static_cast<double>(kHistogramBins);
  const auto b = static_cast<std::size_t>((x - lo_) / width);
  return std::min(b, kHistogramBins - 1);
}

void EmpiricalTail::add(double x) {
  if (std::isnan(x)) throw ArgumentError("NaN sample");
  if (count_ == 0) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  ++count_;
  if (!is_histogram() || x >= hi_) {
    if (sorted_ && !samples_.empty() && x < samples_.back()) sorted_ = false;
    samples_.push_back(x);
  } else if (x < lo_) {
    ++underflow_;
  } else {
    ++bins_[bin_of(x)];
  }
}

void EmpiricalTail::convert_to_histogram(double lo, double hi) {
  if (is_histogram()) return;
  auto binned = histogram(lo, hi);
  for (double x : samples_) binned.add(x);
  *this = std::move(binned);
}

void EmpiricalTail::merge(const EmpiricalTail& other) {
  if (other.count_ == 0) return;
  if (other.is_histogram()) {
    if (!is_histogram()) convert_to_histogram(other.lo_, other.hi_);
    if (lo_ != other.lo_ || hi_ != other.hi_) throw ArgumentError("histogram ranges differ");
    for (std::size_t i = 0; i < kHistogramBins; ++i) bins_[i] += other.bins_[i];
    underflow_ += other.underflow_;
    if (count_ == 0) {
      min_ = other.min_;
      max_ = other.max_;
    } else {
      min_ = std::min(min_, other.min_);
      max_ = std::max(max_, other.max_);
    }
    count_ += other.count_;
    samples_.insert(samples_.end(), other.samples_.begin(), other.samples_.end());
    sorted_ = false;
    return;
  }
  for (double x : other.samples_) add(x);
}

double EmpiricalTail::resolution() const {
  return is_histogram() ? (hi_ - lo_) / static_cast<double>(kHistogramBins) : 0.0;
}

double EmpiricalTail::min() const {
  if (count_ == 0) throw ArgumentError("empty tail");
  return min_;
}

double EmpiricalTail::max() const {
  if (count_ == 0) throw ArgumentError("empty tail");
  return max_;
}

void EmpiricalTail::ensure_sorted() const {
  if (!sorted_) {
    std::sort(samples_.begin(), samples_.end());
    sorted_ = true;
  }
}

const std::vector<double>& EmpiricalTail::sorted_samples() const {
  if (is_histogram()) throw ArgumentError("histogram tails do not keep every sample");
  ensure_sorted();
  return samples_;
}

double EmpiricalTail::quantile(double epsilon) const {
  if (count_ == 0) throw ArgumentError("quantile of an empty tail");
  if (!(epsilon >= 0.0)) throw ArgumentError("epsilon must be >= 0");
  ensure_sorted();
  const double n = static_cast<double>(count_);
  const double allowed = std::min(n, std::floor(epsilon * n));
  // 0-based rank of the answer in the ascending order.
  const auto rank = static_cast<std::uint64_t>(std::max(0.0, n - allowed - 1.0));
  if (!is_histogram()) return samples_[rank];

  const std::uint64_t overflow = samples_.size();
  if (rank >= count_ - overflow) return samples_[rank - (count_ - overflow)];
  if (rank < underflow_) return lo_;
  std::uint64_t below = underflow_;
  const double width = resolution();
  for (std::size_t b = 0; b < kHistogramBins; ++b) {
    below += bins_[b];
    if (rank < below) return std::min(lo_ + width * static_cast<double>(b + 1), max_);
  }
  return max_;
}

double EmpiricalTail::exceedance_fraction(double x) const {
  if (count_ == 0) throw ArgumentError("empty tail");
  ensure_sorted();
  const auto above_in_samples = static_cast<std::uint64_t>(
      samples_.end() - std::upper_bound(samples_.begin(), samples_.end(), x));
  std::uint64_t above = above_in_samples;
  if (is_histogram()) {
    const double width = resolution();
    for (std::size_t b = 0; b < kHistogramBins; ++b) {
      if (lo_ + width * static_cast<double>(b + 1) > x) above += bins_[b];
    }
    if (x < lo_) above += underflow_;
  }
  return static_cast<double>(above) / static_cast<double>(count_);
}

bool EmpiricalTail::insufficient_for(double epsilon) const {
  return static_cast<double>(count_) < 10.0 / epsilon;
}

}  // namespace aoi
