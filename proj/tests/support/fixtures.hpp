#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "instances.hpp"
#include "sobtrace/polycore.hpp"

namespace fixture {

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline sobtrace::SampleSet sample(std::mt19937_64& rng, std::size_t n) {
  return sobtrace::cli::random_instance(rng, n);
}

inline sobtrace::SampleSet sampled(std::vector<double> xs, double (*f)(double)) {
  std::vector<double> ys;
  for (double x : xs) ys.push_back(f(x));
  return sobtrace::SampleSet(std::move(xs), std::move(ys));
}

/// Increasing nodes with gaps in [0.2, 2].
inline std::vector<double> nodes(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> gap(0.2, 2.0);
  std::uniform_real_distribution<double> start(-3.0, 3.0);
  std::vector<double> xs{start(rng)};
  while (xs.size() < n) xs.push_back(xs.back() + gap(rng));
  return xs;
}

inline std::vector<double> gaussian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

/// max(1, sup over [a, b] of |q^{(order)}|) on a 65-point sample: the scale
/// against which pointwise derivative errors of q are measured.
inline double derivative_scale(const sobtrace::Poly& q, double a, double b, int order) {
  double s = 1.0;
  for (int i = 0; i <= 64; ++i) s = std::max(s, std::abs(q.derivative_at(a + (b - a) * i / 64.0, order)));
  return s;
}

/// max over j <= order of h^{j-order} derivative_scale(q, a, b, j), h = b-a:
/// lower derivatives carried to `order` by the interval length. Hermite
/// coefficients on short gaps are formed from exactly these quotients, so a
/// cancelling high derivative is measured against them.
inline double gap_scale(const sobtrace::Poly& q, double a, double b, int order) {
  double s = 0.0;
  for (int j = 0; j <= order; ++j) s = std::max(s, std::pow(b - a, j - order) * derivative_scale(q, a, b, j));
  return s;
}

}  // namespace fixture
