#pragma once

#include <vector>

#include "sobtrace/polycore.hpp"

namespace sobtrace {

/// Whitney (m-1)-field: one jet polynomial per knot, stored about its own
/// knot so that P_x^{(i)}(x) = i! * coeffs[i].
struct WhitneyField {
  std::vector<double> knots;
  std::vector<Poly> jets;
  int m = 1;
};

/// P_x = Lagrange interpolant of f on S_x. Throws TooFewPoints if #E < m.
WhitneyField build_field(const SampleSet& data, int m);

/// Sequence form: sum over consecutive knot pairs of
/// |P_{x_j}^{(i)}(x_j) - P_{x_{j+1}}^{(i)}(x_j)|^p / (x_{j+1}-x_j)^{(m-i)p-1},
/// raised to 1/p. A single knot gives 0.
double jet_sequence_functional(const WhitneyField& field, double p);

inline constexpr std::size_t kJetEnumerationGuard = 18;

/// Exact supremum of the same sum over every increasing subsequence of
/// knots, by enumeration. Throws InstanceTooLarge above 18 knots.
double jet_variational_exact(const WhitneyField& field, double p);

}  // namespace sobtrace
