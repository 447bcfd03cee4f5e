#include "sobtrace/finiteness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sobtrace/errors.hpp"
#include "sobtrace/extend_lmp.hpp"
#include "sobtrace/functionals.hpp"
#include "sobtrace/whitfield.hpp"

namespace sobtrace {

double trace_norm_simplex(std::span<const double> points, std::span<const double> values, int m) {
  if (m < 1 || points.size() != static_cast<std::size_t>(m) + 1 || values.size() != points.size()) {
    throw Error(ErrorCode::BadSimplex, "simplex needs exactly m+1 points with values");
  }
  return factorial(m) * std::abs(divided_difference(points, values));
}

// sum_{j in Z} ((-1)^j/(2j+1))^s = 2 sum_{j>=0} ((-1)^j/(2j+1))^s, since j and
// -j-1 contribute equally. For even s that is 2(1 - 2^{-s}) zeta(s); for odd s
// the series alternates and is summed from the small end.
double favard_cm(int m) {
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  const int s = m + 1;
  double series = 0.0;
  if (s % 2 == 0) {
    series = 2.0 * (1.0 - std::ldexp(1.0, -s)) * std::riemann_zeta(static_cast<double>(s));
  } else {
    long last = 0;
    while (std::pow(2.0 * last + 1.0, -s) > 1e-18) last = last * 2 + 1;
    // Half the first omitted term approximates the tail of an alternating series.
    double sum = 0.5 * ((last + 1) % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0 * last + 3.0, -s);
    for (long j = last; j >= 0; --j) {
      const double term = std::pow(2.0 * j + 1.0, -s);
      sum += j % 2 == 0 ? term : -term;
    }
    series = 2.0 * sum;
  }
  return std::pow(std::numbers::pi / 2.0, s) / series;
}

double deboor_Cm(int m) {
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  double total = std::ldexp(1.0, m - 2) / m;
  for (int i = 1; i <= m; ++i) {
    total += binomial(m, i) * binomial(m - 1, i - 1) * std::ldexp(1.0, 2 * (m - i));
  }
  return total;
}

double EulerSpline::eval(double t, int order) const {
  if (order < 0) throw Error(ErrorCode::BadOrder, "derivative order must be >= 0");
  if (breaks.empty() || t < breaks.front() || t >= breaks.back()) return 0.0;
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  return pieces[static_cast<std::size_t>(it - breaks.begin()) - 1].derivative_at(t, order);
}

double EulerSpline::mth_derivative_sup() const {
  const double lim = interior();
  double best = 0.0;
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    if (breaks[j] < -lim || breaks[j + 1] > lim) continue;
    best = std::max(best, std::abs(pieces[j].derivative_at(0.5 * (breaks[j] + breaks[j + 1]), m)));
  }
  return best;
}

EulerSpline euler_spline(int m, int window) {
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  if (window < m + 2) {
    throw Error(ErrorCode::WindowTooSmall, "Euler spline window must be at least m+2");
  }
  EulerSpline e;
  e.m = m;
  e.c_m = favard_cm(m);
  e.window = window;

  const double shift = 0.5 * (m + 1);
  std::vector<double> knots(static_cast<std::size_t>(m) + 2);
  auto series = [&](double t) {
    const double u = t + shift;
    const int first = std::max(-window, static_cast<int>(std::floor(u)) - m - 1);
    const int last = std::min(window, static_cast<int>(std::floor(u)));
    double sum = 0.0;
    for (int i = first; i <= last; ++i) {
      for (std::size_t k = 0; k < knots.size(); ++k) knots[k] = i + static_cast<double>(k);
      const double b = bspline_eval(knots, u);
      sum += (i % 2 == 0) ? b : -b;
    }
    return e.c_m * sum;
  };

  // Cells in u are [j, j+1] for j = -W .. W+m; each carries a degree-m piece.
  std::vector<double> nodes(static_cast<std::size_t>(m) + 1);
  std::vector<double> vals(nodes.size());
  for (int j = -window; j <= window + m; ++j) {
    const double a = j - shift;
    e.breaks.push_back(a);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      nodes[k] = a + (k + 0.5) / static_cast<double>(nodes.size());
      vals[k] = series(nodes[k]);
    }
    e.pieces.push_back(lagrange_poly(nodes, vals, a + 0.5));
  }
  e.breaks.push_back(window + m + 1 - shift);
  return e;
}

KmExperiment km_lower_experiment(int m, int n) {
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  if (n < m + 2) throw Error(ErrorCode::TooFewPoints, "experiment needs n >= m+2");
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = 0; i <= n; ++i) {
    xs.push_back(i);
    ys.push_back(i % 2 == 0 ? 1.0 : -1.0);
  }
  const SampleSet data(std::move(xs), std::move(ys));
  KmExperiment out;
  out.seminorm = lmp_seminorm(assemble_extension(build_field(data, m)), kInf);
  out.denominator = factorial(m) * n_infty(data, m);
  out.ratio = out.seminorm / out.denominator;
  out.c_m = favard_cm(m);
  return out;
}

}  // namespace sobtrace
