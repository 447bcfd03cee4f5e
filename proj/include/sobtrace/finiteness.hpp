#pragma once

// Constants and extremal objects for the finiteness problem: the exact trace
// norm on m+1 points, Favard's c_m, de Boor's C_m, the Euler spline and the
// alternating-data experiment.

#include <span>
#include <vector>

#include "sobtrace/polycore.hpp"

namespace sobtrace {

/// m! |Delta^m f[S]| for an (m+1)-point set S. Throws BadSimplex when the
/// cardinality is not m+1.
double trace_norm_simplex(std::span<const double> points, std::span<const double> values, int m);

/// c_m = (pi/2)^{m+1} / sum_{j in Z} ((-1)^j / (2j+1))^{m+1}.
double favard_cm(int m);

/// C_m = 2^{m-2}/m + sum_{i=1}^{m} C(m,i) C(m-1,i-1) 4^{m-i}.
double deboor_Cm(int m);

/// E_m(t) = c_m sum_{|i| <= W} (-1)^i M_{m+1}[i, ..., i+m+1](t + (m+1)/2),
/// stored as one degree-m polynomial per unit cell.
struct EulerSpline {
  int m = 1;
  double c_m = 1.0;
  int window = 0;
  std::vector<double> breaks;  // cell boundaries, spacing 1
  std::vector<Poly> pieces;    // pieces[j] on [breaks[j], breaks[j+1])

  /// Half-width of the region where truncation of the series is invisible.
  int interior() const noexcept { return window - m - 1; }
  /// E_m^{(order)}(t); 0 outside the assembled cells.
  double eval(double t, int order = 0) const;
  /// max |E_m^{(m)}| over cells lying within the interior.
  double mth_derivative_sup() const;
};

inline int default_euler_window(int m) { return 20 + m; }

/// Throws WindowTooSmall when W < m + 2.
EulerSpline euler_spline(int m, int window);
inline EulerSpline euler_spline(int m) { return euler_spline(m, default_euler_window(m)); }

struct KmExperiment {
  double seminorm = 0.0;     // ||F^{(m)}||_inf for Whitney's F
  double denominator = 0.0;  // m! n_infty, which is 2^m here
  double ratio = 0.0;
  double c_m = 0.0;
};

/// E = {0..n}, f(i) = (-1)^i. Throws TooFewPoints when n < m + 2.
KmExperiment km_lower_experiment(int m, int n);

}  // namespace sobtrace
