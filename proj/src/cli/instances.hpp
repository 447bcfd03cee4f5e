#pragma once

#include <cstdint>
#include <random>

#include "sobtrace/polycore.hpp"

namespace sobtrace::cli {

/// Independent stream per (base seed, tag...) so instances never depend on
/// iteration order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

struct InstanceShape {
  double gap_lo = 0.2;
  double gap_hi = 2.0;
  double long_gap_prob = 0.0;  // chance a gap is drawn from [4, long_gap_hi]
  double long_gap_hi = 12.0;
};

/// n points starting in [-5, 5] with random gaps and N(0,1) values.
SampleSet random_instance(std::mt19937_64& rng, std::size_t n, const InstanceShape& shape = {});

}  // namespace sobtrace::cli
