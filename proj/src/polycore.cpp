#include "sobtrace/polycore.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sobtrace/errors.hpp"
#include "sobtrace/quadrature.hpp"

namespace sobtrace {

namespace {

void require_distinct(std::span<const double> points) {
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::DegenerateNodes, "interpolation nodes must be pairwise distinct");
  }
}

void require_same_length(std::span<const double> points, std::span<const double> values) {
  if (points.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument, "points and values differ in length");
  }
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one node");
}

void require_increasing(std::span<const double> knots) {
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i] == knots[i + 1]) {
      throw Error(ErrorCode::DegenerateNodes, "B-spline knots must be distinct");
    }
    if (!(knots[i] < knots[i + 1])) {
      throw Error(ErrorCode::InvalidArgument, "B-spline knots must be increasing");
    }
  }
}

// Newton coefficients Delta^l f[x_0..x_l], l = 0..k.
std::vector<double> newton_coefficients(std::span<const double> points,
                                        std::span<const double> values) {
  const std::size_t n = points.size();
  std::vector<double> table(values.begin(), values.end());
  std::vector<double> out{table[0]};
  out.reserve(n);
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      table[i] = (table[i + 1] - table[i]) / (points[i + level] - points[i]);
    }
    out.push_back(table[0]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- SampleSet

SampleSet::SampleSet(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) {
    throw Error(ErrorCode::InvalidArgument, "xs and ys differ in length");
  }
  if (xs_.empty()) throw Error(ErrorCode::InvalidArgument, "sample set must be nonempty");
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "non-finite entry at row " + std::to_string(i));
    }
    if (i > 0 && xs_[i] == xs_[i - 1]) {
      throw Error(ErrorCode::DegenerateNodes,
                  "duplicate abscissa at row " + std::to_string(i));
    }
    if (i > 0 && xs_[i] < xs_[i - 1]) {
      throw Error(ErrorCode::InvalidArgument,
                  "abscissae not increasing at row " + std::to_string(i));
    }
  }
}

SampleSet SampleSet::from_unsorted(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::InvalidArgument, "xs and ys differ in length");
  }
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return xs[l] < xs[r]; });
  std::vector<double> sx;
  std::vector<double> sy;
  sx.reserve(xs.size());
  sy.reserve(ys.size());
  for (std::size_t i : order) {
    sx.push_back(xs[i]);
    sy.push_back(ys[i]);
  }
  return SampleSet(std::move(sx), std::move(sy));
}

std::size_t SampleSet::index_of(double x) const noexcept {
  const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  if (it != xs_.end() && *it == x) return static_cast<std::size_t>(it - xs_.begin());
  return xs_.size();
}

// --------------------------------------------------------------------- Poly

int Poly::degree() const noexcept {
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    if (coeffs[j] != 0.0) return static_cast<int>(j);
  }
  return 0;
}

bool Poly::is_zero() const noexcept {
  return std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; });
}

double Poly::derivative_at(double x, int order) const noexcept {
  if (order < 0) return 0.0;
  const auto k = static_cast<std::size_t>(order);
  if (k >= coeffs.size()) return 0.0;
  const double u = x - center;
  double acc = 0.0;
  for (std::size_t j = coeffs.size(); j-- > k;) {
    // falling factorial j!/(j-k)!
    double ff = 1.0;
    for (std::size_t t = 0; t < k; ++t) ff *= static_cast<double>(j - t);
    acc = acc * u + ff * coeffs[j];
  }
  return acc;
}

Poly Poly::derivative(int order) const {
  if (order <= 0) return *this;
  const auto k = static_cast<std::size_t>(order);
  if (k >= coeffs.size()) return Poly(center, {0.0});
  std::vector<double> out(coeffs.size() - k);
  for (std::size_t j = k; j < coeffs.size(); ++j) {
    double ff = 1.0;
    for (std::size_t t = 0; t < k; ++t) ff *= static_cast<double>(j - t);
    out[j - k] = ff * coeffs[j];
  }
  return Poly(center, std::move(out));
}

Poly Poly::recentered(double new_center) const {
  Poly out(new_center, coeffs);
  const double d = new_center - center;
  if (d == 0.0 || coeffs.size() < 2) return out;
  // Repeated synthetic division by (u - d).
  auto& a = out.coeffs;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) a[j] += d * a[j + 1];
  }
  return out;
}

Poly Poly::truncated(std::size_t max_degree) const {
  Poly out(center, coeffs);
  if (out.coeffs.size() > max_degree + 1) out.coeffs.resize(max_degree + 1);
  return out;
}

std::vector<double> Poly::taylor_at(double x, std::size_t count) const {
  std::vector<double> out = recentered(x).coeffs;
  out.resize(count, 0.0);
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  const Poly rhs = other.center == center ? other : other.recentered(center);
  if (coeffs.size() < rhs.coeffs.size()) coeffs.resize(rhs.coeffs.size(), 0.0);
  for (std::size_t j = 0; j < rhs.coeffs.size(); ++j) coeffs[j] += rhs.coeffs[j];
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& c : coeffs) c *= s;
  return *this;
}

Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
Poly operator-(Poly lhs, const Poly& rhs) { return lhs += rhs * -1.0; }
Poly operator*(Poly lhs, double s) { return lhs *= s; }
Poly operator*(double s, Poly rhs) { return rhs *= s; }

Poly operator*(const Poly& lhs, const Poly& rhs) {
  const Poly r = rhs.center == lhs.center ? rhs : rhs.recentered(lhs.center);
  if (lhs.coeffs.empty() || r.coeffs.empty()) return Poly(lhs.center, {0.0});
  std::vector<double> out(lhs.coeffs.size() + r.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) out[i + j] += lhs.coeffs[i] * r.coeffs[j];
  }
  return Poly(lhs.center, std::move(out));
}

// --------------------------------------------------------- combinatorics

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// ------------------------------------------------------- divided differences

double divided_difference(std::span<const double> points, std::span<const double> values) {
  require_same_length(points, values);
  require_distinct(points);
  std::vector<double> table(values.begin(), values.end());
  const std::size_t n = points.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      table[i] = (table[i + 1] - table[i]) / (points[i + level] - points[i]);
    }
  }
  return table[0];
}

Poly lagrange_poly(std::span<const double> points, std::span<const double> values) {
  require_same_length(points, values);
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
  return lagrange_poly(points, values, 0.5 * (*lo + *hi));
}

Poly lagrange_poly(std::span<const double> points, std::span<const double> values,
                   double center) {
  require_same_length(points, values);
  require_distinct(points);
  const std::vector<double> c = newton_coefficients(points, values);
  // Horner on the Newton form: q = c_n; q = q * (u - (x_k - center)) + c_k.
  std::vector<double> q{c.back()};
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    const double shift = points[k] - center;
    std::vector<double> next(q.size() + 1, 0.0);
    for (std::size_t j = 0; j < q.size(); ++j) {
      next[j + 1] += q[j];
      next[j] -= shift * q[j];
    }
    next[0] += c[k];
    q = std::move(next);
  }
  return Poly(center, std::move(q));
}

// ------------------------------------------------------------------ B-splines

double bspline_eval(std::span<const double> knots, double t) {
  if (knots.size() < 2) throw Error(ErrorCode::UnsupportedOrder, "B-spline order k must be >= 1");
  require_increasing(knots);
  const std::size_t k = knots.size() - 1;
  if (t < knots.front() || t >= knots.back()) return 0.0;

  // Cox-de Boor on the partition-of-unity basis, then rescale to unit mass.
  std::vector<double> b(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) b[j] = (knots[j] <= t && t < knots[j + 1]) ? 1.0 : 0.0;
  for (std::size_t r = 2; r <= k; ++r) {
    for (std::size_t j = 0; j + r <= k; ++j) {
      const double left = (t - knots[j]) / (knots[j + r - 1] - knots[j]) * b[j];
      const double right = (knots[j + r] - t) / (knots[j + r] - knots[j + 1]) * b[j + 1];
      b[j] = left + right;
    }
  }
  return static_cast<double>(k) / (knots.back() - knots.front()) * b[0];
}

double bspline_integral(std::span<const double> knots) {
  if (knots.size() < 2) throw Error(ErrorCode::UnsupportedOrder, "B-spline order k must be >= 1");
  require_increasing(knots);
  const std::vector<double> ks(knots.begin(), knots.end());
  return integrate_adaptive([&ks](double t) { return bspline_eval(ks, t); }, ks.front(),
                            ks.back(), std::span<const double>(ks).subspan(1, ks.size() - 2));
}

// ------------------------------------------------------------------- Hermite

Poly hermite_gap(const Poly& pa, const Poly& pb, double a, double b, int m) {
  if (!(a < b)) throw Error(ErrorCode::BadInterval, "hermite_gap needs a < b");
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  const double h = b - a;
  const double c = 0.5 * (a + b);
  const auto mm = static_cast<std::size_t>(m);

  // s = (x-a)/h and t = (b-x)/h about the midpoint.
  const Poly s(c, {0.5, 1.0 / h});
  const Poly t(c, {0.5, -1.0 / h});
  const std::vector<double> ta = pa.taylor_at(a, mm);
  const std::vector<double> tb = pb.taylor_at(b, mm);

  std::vector<Poly> s_pow{Poly::constant(1.0, c)};
  std::vector<Poly> t_pow{Poly::constant(1.0, c)};
  for (std::size_t i = 1; i <= mm; ++i) {
    s_pow.push_back(s_pow.back() * s);
    t_pow.push_back(t_pow.back() * t);
  }

  Poly left_sum = Poly::constant(0.0, c);
  Poly right_sum = Poly::constant(0.0, c);
  for (int k = 0; k < m; ++k) {
    const double w = binomial(m + k - 1, m - 1);
    const auto keep = static_cast<std::size_t>(m - k);  // P_{., m-k-1} has m-k terms
    const Poly pa_trunc =
        Poly(a, std::vector<double>(ta.begin(), ta.begin() + static_cast<long>(keep))).recentered(c);
    const Poly pb_trunc =
        Poly(b, std::vector<double>(tb.begin(), tb.begin() + static_cast<long>(keep))).recentered(c);
    left_sum += (s_pow[static_cast<std::size_t>(k)] * pa_trunc) * w;
    right_sum += (t_pow[static_cast<std::size_t>(k)] * pb_trunc) * w;
  }
  Poly out = t_pow[mm] * left_sum + s_pow[mm] * right_sum;
  out.coeffs.resize(2 * mm, 0.0);
  return out;
}

Poly hermite_gap_solve(const Poly& pa, const Poly& pb, double a, double b, int m) {
  if (!(a < b)) throw Error(ErrorCode::BadInterval, "hermite_gap_solve needs a < b");
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  const int n = 2 * m;
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // Unknowns g_j in H(x) = sum g_j w^j with w = (x - c)/half in [-1, 1].
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < m; ++i) {
    const double scale = std::pow(half, i);  // d^i/dx^i = half^{-i} d^i/dw^i
    for (int j = i; j < n; ++j) {
      double ff = 1.0;
      for (int t = 0; t < i; ++t) ff *= (j - t);
      mat(i, j) = ff * std::pow(-1.0, j - i);
      mat(m + i, j) = ff;
    }
    rhs(i) = pa.derivative_at(a, i) * scale;
    rhs(m + i) = pb.derivative_at(b, i) * scale;
  }
  const Eigen::VectorXd g = mat.partialPivLu().solve(rhs);
  std::vector<double> coeffs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) coeffs[static_cast<std::size_t>(j)] = g(j) / std::pow(half, j);
  return Poly(c, std::move(coeffs));
}

// ------------------------------------------------------------ evaluation

double poly_eval(const Poly& q, double x, int order) {
  if (order < 0) throw Error(ErrorCode::BadOrder, "derivative order must be >= 0");
  return q.derivative_at(x, order);
}

std::vector<double> real_roots_in(const Poly& q, double a, double b) {
  std::vector<double> roots;
  const int deg = q.degree();
  if (deg == 0 || !(a <= b)) return roots;
  if (a == b) {
    if (q(a) == 0.0) roots.push_back(a);
    return roots;
  }
  const int segments = 64 * deg;
  const double width = b - a;
  double x_prev = a;
  double v_prev = q(a);
  if (v_prev == 0.0) roots.push_back(a);
  for (int i = 1; i <= segments; ++i) {
    const double x = i == segments ? b : a + width * i / segments;
    const double v = q(x);
    if (v == 0.0) {
      roots.push_back(x);
    } else if (v_prev != 0.0 && (v_prev < 0.0) != (v < 0.0)) {
      double lo = x_prev;
      double hi = x;
      double flo = v_prev;
      // Bisect to full double resolution (well below 1e-13 relative).
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = q(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    v_prev = v;
  }
  return roots;
}

double poly_p_integral(const Poly& q, double a, double b, double p) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a <= b)) {
    throw Error(ErrorCode::BadInterval, "poly_p_integral needs finite a <= b");
  }
  if (!(p > 0.0)) throw Error(ErrorCode::InvalidArgument, "exponent p must be positive");

  if (std::isinf(p)) {
    double best = std::max(std::abs(q(a)), std::abs(q(b)));
    if (a == b || q.is_zero()) return best;
    for (double r : real_roots_in(q.derivative(), a, b)) best = std::max(best, std::abs(q(r)));
    return best;
  }
  if (a == b || q.is_zero()) return 0.0;
  const std::vector<double> roots = real_roots_in(q, a, b);
  const Poly qq = q;
  if (qq.degree() == 0) return std::pow(std::abs(qq.coeffs[0]), p) * (b - a);
  return integrate_adaptive([&qq, p](double x) { return std::pow(std::abs(qq(x)), p); }, a, b,
                            roots);
}

}  // namespace sobtrace
