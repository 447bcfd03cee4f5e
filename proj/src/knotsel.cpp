#include "sobtrace/knotsel.hpp"

#include <algorithm>
#include <cmath>

#include "sobtrace/errors.hpp"

namespace sobtrace {

namespace {

void require_strictly_increasing(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorCode::InvalidArgument, "knot set must be nonempty");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] < xs[i + 1])) {
      throw Error(ErrorCode::InvalidArgument, "abscissae must be strictly increasing");
    }
  }
}

}  // namespace

double nearest_outside(std::span<const double> abscissae, std::span<const double> subset) {
  require_strictly_increasing(abscissae);
  if (subset.empty()) throw Error(ErrorCode::InvalidArgument, "subset A must be nonempty");

  std::vector<bool> in_subset(abscissae.size(), false);
  for (double a : subset) {
    const auto it = std::lower_bound(abscissae.begin(), abscissae.end(), a);
    if (it == abscissae.end() || *it != a) {
      throw Error(ErrorCode::InvalidArgument, "subset A must lie in E");
    }
    in_subset[static_cast<std::size_t>(it - abscissae.begin())] = true;
  }

  // Scanning in increasing order with a strict comparison keeps the
  // smaller abscissa on ties.
  double best = 0.0;
  double best_dist = kInf;
  for (std::size_t i = 0; i < abscissae.size(); ++i) {
    if (in_subset[i]) continue;
    double d = kInf;
    for (double a : subset) d = std::min(d, std::abs(abscissae[i] - a));
    if (d < best_dist) {
      best_dist = d;
      best = abscissae[i];
    }
  }
  if (std::isinf(best_dist)) throw Error(ErrorCode::Exhausted, "A = E, no point outside");
  return best;
}

KnotEntry knot_set(std::span<const double> abscissae, double x, int m) {
  require_strictly_increasing(abscissae);
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  const auto it = std::lower_bound(abscissae.begin(), abscissae.end(), x);
  if (it == abscissae.end() || *it != x) throw Error(ErrorCode::InvalidArgument, "x must lie in E");

  // Every Y_j is a run of consecutive knots, so the nearest outside point is
  // one of the two neighbours of the run.
  const std::size_t n = abscissae.size();
  std::size_t lo = static_cast<std::size_t>(it - abscissae.begin());
  std::size_t hi = lo;
  KnotEntry entry;
  entry.chain.push_back(x);
  while (entry.chain.size() < static_cast<std::size_t>(m) && hi - lo + 1 < n) {
    const double left = lo > 0 ? abscissae[lo] - abscissae[lo - 1] : kInf;
    const double right = hi + 1 < n ? abscissae[hi + 1] - abscissae[hi] : kInf;
    if (left <= right) {
      --lo;
      entry.chain.push_back(abscissae[lo]);
    } else {
      ++hi;
      entry.chain.push_back(abscissae[hi]);
    }
  }
  entry.base = entry.chain.back();
  entry.window_start = lo;
  entry.s_set.assign(abscissae.begin() + static_cast<long>(lo),
                     abscissae.begin() + static_cast<long>(hi + 1));
  return entry;
}

KnotSelection knot_table(std::span<const double> abscissae, int m) {
  KnotSelection table;
  table.reserve(abscissae.size());
  for (double x : abscissae) table.push_back(knot_set(abscissae, x, m));
  return table;
}

}  // namespace sobtrace
