#include "aoi/rng.hpp"

#include <cmath>

namespace aoi {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t replication, StreamId stream) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ replication);
  return mix64(h ^ static_cast<std::uint64_t>(stream));
}

VariateSampler::VariateSampler(DistributionModel model, std::uint64_t seed)
    : model_(std::move(model)), engine_(seed) {}

double VariateSampler::unit() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double VariateSampler::operator()() {
  const auto& kind = model_.kind();
  if (const auto* e = std::get_if<Exponential>(&kind)) return -std::log(unit()) / e->rate;
  if (const auto* d = std::get_if<Deterministic>(&kind)) return d->value;
  const auto& erlang = std::get<Erlang>(kind);
  double sum = 0.0;
  for (int i = 0; i < erlang.shape; ++i) sum += -std::log(unit());
  return sum / erlang.rate;
}

}  // namespace aoi
