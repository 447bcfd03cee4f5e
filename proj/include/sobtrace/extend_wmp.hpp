#pragma once

#include <cstddef>
#include <vector>

#include "sobtrace/extend_lmp.hpp"
#include "sobtrace/polycore.hpp"

namespace sobtrace {

/// E together with the grid G placed in long gaps and on both unbounded
/// sides; f is extended by zero to G.
struct AugmentedSet {
  SampleSet base;
  std::vector<double> grid;      // increasing
  std::size_t truncation = 0;    // retained grid points per unbounded side

  /// E u G with the zero-extended values.
  SampleSet merged() const;
};

/// Grid points retained on each unbounded side.
std::size_t tail_grid_count(int m);

/// Gaps longer than 4 get n_J - 1 equispaced interior points (n_J =
/// floor(|J|/2)); each unbounded side gets tail_grid_count(m) points at
/// spacing 2.
AugmentedSet build_grid(const SampleSet& data, int m);

/// For #E = n+1 <= m: appends x_k = x_n + 2(k-n), k = n+1..m, with value 0.
/// Throws NotApplicable when #E > m.
SampleSet augment_small_set(const SampleSet& data, int m);

struct WmpExtension {
  PiecewiseExtension extension;
  AugmentedSet augmented;
  /// Outermost grid points on each side whose jets were checked to be zero.
  std::size_t zero_jets_checked = 0;
};

/// Full pipeline: small-set augmentation, grid, zero extension, Whitney
/// field and extension on the augmented set. Throws ZeroTailViolation if the
/// outermost m retained grid jets on either side are not identically zero.
WmpExtension wmp_extend_detailed(const SampleSet& data, int m, double p);
PiecewiseExtension wmp_extend(const SampleSet& data, int m, double p);

/// sum_{k=0}^{m} ||F^{(k)}||_{L_p(R)}; throws NonCompactSupport unless both
/// tails vanish.
double wmp_norm(const PiecewiseExtension& ext, double p);

/// max dist(x, E) over the closure of supp F, read off the nonzero pieces.
/// 0 when F vanishes identically.
double support_radius(const PiecewiseExtension& ext, const SampleSet& data);

/// Bound on support_radius: 3(m + 2).
inline double support_bound(int m) { return 3.0 * (m + 2); }

}  // namespace sobtrace
