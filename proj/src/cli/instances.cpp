#include "instances.hpp"

#include <vector>

namespace sobtrace::cli {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return splitmix(splitmix(splitmix(splitmix(base) ^ a) ^ b) ^ c);
}

SampleSet random_instance(std::mt19937_64& rng, std::size_t n, const InstanceShape& shape) {
  std::uniform_real_distribution<double> start(-5.0, 5.0);
  std::uniform_real_distribution<double> gap(shape.gap_lo, shape.gap_hi);
  std::uniform_real_distribution<double> long_gap(4.0, shape.long_gap_hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::normal_distribution<double> value(0.0, 1.0);
  std::vector<double> xs;
  std::vector<double> ys;
  double x = start(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) x += coin(rng) < shape.long_gap_prob ? long_gap(rng) : gap(rng);
    xs.push_back(x);
    ys.push_back(value(rng));
  }
  return SampleSet(std::move(xs), std::move(ys));
}

}  // namespace sobtrace::cli
