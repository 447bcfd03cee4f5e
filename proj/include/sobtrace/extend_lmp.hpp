#pragma once

#include <vector>

#include "sobtrace/polycore.hpp"
#include "sobtrace/whitfield.hpp"

namespace sobtrace {

/// Whitney's extension F: Hermite polynomials on bounded gaps, the extreme
/// jets on the two unbounded tails. F is C^{m-1} and a spline of order 2m.
struct PiecewiseExtension {
  std::vector<double> breaks;   // knot abscissae
  std::vector<Poly> gap_polys;  // gap_polys[j] lives on (breaks[j], breaks[j+1])
  Poly left_tail;
  Poly right_tail;
  std::vector<Poly> knot_jets;  // F agrees with these at the knots
  int m = 1;
};

PiecewiseExtension assemble_extension(const WhitneyField& field);

/// F^{(order)}(x). Orders below m at a knot read the knot jet; otherwise the
/// piece to the right of x is used (the right tail past the last knot).
/// Throws BadOrder for order < 0.
double extension_eval(const PiecewiseExtension& ext, double x, int order);

/// ||F^{(m)}||_{L_p(R)} for p in (1, inf) or p = inf. Tails contribute 0.
double lmp_seminorm(const PiecewiseExtension& ext, double p);

/// Max over breaks and orders 0..m-1 of |left - right| / (1 + |value|).
double smoothness_report(const PiecewiseExtension& ext);

}  // namespace sobtrace
