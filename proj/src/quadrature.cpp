#include "sobtrace/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "sobtrace/errors.hpp"

namespace sobtrace {

namespace {

struct GaussRule {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};
};

// Roots of P_16 by Newton from the Chebyshev guesses.
GaussRule make_rule() {
  constexpr int n = 16;
  GaussRule rule;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& rule16() {
  static const GaussRule rule = make_rule();
  return rule;
}

struct Panel {
  double a;
  double b;
  double estimate;  // from the two halves
  double change;    // |halves - whole|
};

struct ByChange {
  bool operator()(const Panel& l, const Panel& r) const { return l.change < r.change; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, double whole) {
  const double mid = 0.5 * (a + b);
  const double halves = gauss_legendre16(f, a, mid) + gauss_legendre16(f, mid, b);
  return Panel{a, b, halves, std::abs(halves - whole)};
}

}  // namespace

double gauss_legendre16(const std::function<double(double)>& f, double a, double b) {
  const auto& rule = rule16();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < 16; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breaks, const QuadratureOptions& opts) {
  if (!(a <= b)) throw Error(ErrorCode::BadInterval, "integrate_adaptive needs a <= b");
  if (a == b) return 0.0;

  std::vector<double> cuts{a};
  for (double c : breaks) {
    if (c > cuts.back() && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);

  std::priority_queue<Panel, std::vector<Panel>, ByChange> heap;
  double total = 0.0;
  double change = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Panel p = make_panel(f, cuts[i], cuts[i + 1], gauss_legendre16(f, cuts[i], cuts[i + 1]));
    total += p.estimate;
    change += p.change;
    heap.push(p);
  }

  while (change > opts.rel_tol * std::abs(total) && change > 0.0) {
    if (heap.size() >= opts.max_panels) {
      throw QuadratureFailure("panel cap reached before relative change fell below tolerance",
                              total);
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision; accept it.
      change -= worst.change;
      heap.push(Panel{worst.a, worst.b, worst.estimate, 0.0});
      continue;
    }
    const double left_whole = gauss_legendre16(f, worst.a, mid);
    const double right_whole = gauss_legendre16(f, mid, worst.b);
    const Panel left = make_panel(f, worst.a, mid, left_whole);
    const Panel right = make_panel(f, mid, worst.b, right_whole);
    total += left.estimate + right.estimate - worst.estimate;
    change += left.change + right.change - worst.change;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of incremental updates.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().estimate;
    heap.pop();
  }
  return sum;
}

}  // namespace sobtrace
