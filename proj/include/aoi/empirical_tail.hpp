#pragma once

#include <cstdint>
#include <vector>

namespace aoi {

/// Empirical complementary CDF of a metric. Exact mode keeps every sample;
/// histogram mode keeps 10^4 fixed-width bins over [lo, hi) plus the exact
/// values of everything at or above hi, so quantiles far in the tail stay
/// exact and the rest are off by at most one bin width.
class EmpiricalTail {
 public:
  static constexpr std::size_t kHistogramBins = 10000;

  EmpiricalTail() = default;
  static EmpiricalTail from_samples(std::vector<double> samples);
  static EmpiricalTail histogram(double lo, double hi);

  void add(double x);
  void reserve(std::size_t n);

  /// Pools another tail into this one. The result depends only on the pooled
  /// multiset, never on merge order. Merging two histograms requires equal
  /// ranges; an exact tail merged into a histogram is binned.
  void merge(const EmpiricalTail& other);

  /// Re-bins an exact tail; a no-op when already a histogram.
  void convert_to_histogram(double lo, double hi);

  std::uint64_t size() const { return count_; }
  bool is_histogram() const { return !bins_.empty(); }
  // Bin width; 0 in exact mode.
  double resolution() const;
  double min() const;
  double max() const;

  /// Smallest x with (#samples > x) / n <= epsilon. Histogram mode returns the
  /// upper edge of the bin holding that rank.
  double quantile(double epsilon) const;

  /// (#samples > x) / n. Histogram mode counts every bin reaching above x, so
  /// the fraction can only be overstated.
  double exceedance_fraction(double x) const;

  /// n < 10 / epsilon: too few samples for a meaningful epsilon-quantile.
  bool insufficient_for(double epsilon) const;

  /// Sorted samples (exact mode only).
  const std::vector<double>& sorted_samples() const;

 private:
  void ensure_sorted() const;
  std::size_t bin_of(double x) const;

  mutable std::vector<double> samples_;   // exact mode, or overflow values in histogram mode
  mutable bool sorted_ = true;
  std::vector<std::uint64_t> bins_;
  std::uint64_t underflow_ = 0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
  std::uint64_t count_ = 0;
};

}  // namespace aoi
