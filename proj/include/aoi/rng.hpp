#pragma once

#include <cstdint>
#include <random>

#include "aoi/distribution.hpp"

namespace aoi {

enum class StreamId : std::uint64_t { Events = 1, Service = 2 };

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t z);

/// Seed of one random stream, a pure function of (base_seed, replication,
/// stream). Each key component is folded in with a SplitMix64 round, so
/// neighbouring replications and the two streams of one replication start
/// from unrelated generator states.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t replication, StreamId stream);

/// iid draws from a DistributionModel by inversion of a 53-bit uniform, so the
/// sequence depends only on the seed and not on the standard library vendor.
class VariateSampler {
 public:
  VariateSampler(DistributionModel model, std::uint64_t seed);

  double operator()();

  const DistributionModel& model() const { return model_; }

 private:
  // Uniform on (0, 1].
  double unit();

  DistributionModel model_;
  std::mt19937_64 engine_;
};

}  // namespace aoi
