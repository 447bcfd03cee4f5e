#pragma once

// Interpolation-knot selection for finite sets: the nearest-outside point
// of a subset, the chain y_0(x), y_1(x), ... grown from each knot, and the
// resulting m-point sets S_x with their base point s_x.

#include <cstddef>
#include <span>
#include <vector>

#include "sobtrace/polycore.hpp"

namespace sobtrace {

struct KnotEntry {
  std::vector<double> s_set;  // increasing abscissae of S_x
  double base = 0.0;          // s_x, the last point added to the chain
  std::vector<double> chain;  // y_0(x), y_1(x), ... in construction order
  std::size_t window_start = 0;  // S_x = E[window_start .. window_start + #S_x)
};

/// One entry per knot of E, in knot order.
using KnotSelection = std::vector<KnotEntry>;

/// Point of E \ A closest to A; equal distances go to the smaller abscissa.
/// `subset` must consist of points of `abscissae`. Throws Exhausted when
/// A = E and InvalidArgument when A is empty or not contained in E.
double nearest_outside(std::span<const double> abscissae, std::span<const double> subset);

/// Chain y_0 = x, y_{j+1} = nearest_outside(E, Y_j) stopped at j = m-1 or
/// when E runs out. `abscissae` must be strictly increasing.
KnotEntry knot_set(std::span<const double> abscissae, double x, int m);

KnotSelection knot_table(std::span<const double> abscissae, int m);

}  // namespace sobtrace
