#pragma once

// Algebraic kernel: shifted-monomial polynomials, divided differences,
// Lagrange interpolation, B-splines and the two-point Hermite gap polynomial.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace sobtrace {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default relative tolerance for equality assertions.
inline constexpr double kDefaultRelTol = 1e-9;

/// Discrete data (E, f): strictly increasing finite abscissae with values.
class SampleSet {
 public:
  SampleSet() = default;
  /// Validates the invariants; throws DegenerateNodes on repeated abscissae
  /// and InvalidArgument on anything else.
  SampleSet(std::vector<double> xs, std::vector<double> ys);

  /// Sorts rows by abscissa first; duplicates are still rejected.
  static SampleSet from_unsorted(std::vector<double> xs, std::vector<double> ys);

  std::size_t size() const noexcept { return xs_.size(); }
  bool empty() const noexcept { return xs_.empty(); }
  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ys() const noexcept { return ys_; }
  double x(std::size_t i) const { return xs_[i]; }
  double y(std::size_t i) const { return ys_[i]; }
  double span_length() const noexcept { return empty() ? 0.0 : xs_.back() - xs_.front(); }

  /// Index of `x` in the abscissae, or size() if absent.
  std::size_t index_of(double x) const noexcept;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// q(x) = sum_j coeffs[j] * (x - center)^j.
struct Poly {
  double center = 0.0;
  std::vector<double> coeffs;

  Poly() = default;
  Poly(double c, std::vector<double> a) : center(c), coeffs(std::move(a)) {}

  static Poly constant(double value, double center = 0.0) { return Poly(center, {value}); }

  /// Index of the highest nonzero coefficient; 0 for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept;

  double operator()(double x) const noexcept { return derivative_at(x, 0); }
  /// q^{(order)}(x); zero once order exceeds the degree.
  double derivative_at(double x, int order) const noexcept;
  Poly derivative(int order = 1) const;

  /// Same polynomial, expanded about `new_center` (Taylor shift).
  Poly recentered(double new_center) const;
  /// Keeps coefficients of degree <= max_degree.
  Poly truncated(std::size_t max_degree) const;
  /// Taylor coefficients q^{(i)}(x)/i! for i = 0..count-1.
  std::vector<double> taylor_at(double x, std::size_t count) const;

  Poly& operator+=(const Poly& other);
  Poly& operator*=(double s);
};

Poly operator+(Poly lhs, const Poly& rhs);
Poly operator-(Poly lhs, const Poly& rhs);
Poly operator*(Poly lhs, double s);
Poly operator*(double s, Poly rhs);
/// Product expanded about the left operand's center.
Poly operator*(const Poly& lhs, const Poly& rhs);

/// Delta^k f[points] via the recursive (Neville-style) table. Points need not
/// be sorted, only pairwise distinct.
double divided_difference(std::span<const double> points, std::span<const double> values);

/// Interpolating polynomial of degree <= k, expanded about `center`
/// (defaults to the midpoint of the node hull).
Poly lagrange_poly(std::span<const double> points, std::span<const double> values);
Poly lagrange_poly(std::span<const double> points, std::span<const double> values, double center);

/// Normalized B-spline M_k[S](t) on k+1 increasing knots; unit integral,
/// right-continuous, supported on [x_0, x_k).
double bspline_eval(std::span<const double> knots, double t);

/// Numerical integral of M_k[S] over its support (self-test; returns ~1).
double bspline_integral(std::span<const double> knots);

/// Unique polynomial of degree <= 2m-1 matching the jets of P_a at a and
/// P_b at b up to order m-1, built from the explicit binomial formula.
/// Result is expanded about (a+b)/2.
Poly hermite_gap(const Poly& pa, const Poly& pb, double a, double b, int m);

/// Same interpolant obtained by solving the 2m x 2m confluent Vandermonde
/// system; kept as an independent cross-check of hermite_gap.
Poly hermite_gap_solve(const Poly& pa, const Poly& pb, double a, double b, int m);

double poly_eval(const Poly& q, double x, int order);

/// Finite p: int_a^b |q|^p (adaptive Gauss-Legendre, split at real roots).
/// p = +inf: max_[a,b] |q| via endpoints and critical points.
double poly_p_integral(const Poly& q, double a, double b, double p);

/// Real roots of q in [a, b]: sign changes on a 64*deg grid, polished by
/// bisection. Roots of even multiplicity without a sign change are missed.
std::vector<double> real_roots_in(const Poly& q, double a, double b);

double binomial(int n, int k);
double factorial(int n);

}  // namespace sobtrace
