#include "sobtrace/extend_wmp.hpp"

#include <algorithm>
#include <cmath>

#include "sobtrace/errors.hpp"
#include "sobtrace/whitfield.hpp"

namespace sobtrace {

namespace {

double dist_to_set(std::span<const double> xs, double x) {
  const auto it = std::lower_bound(xs.begin(), xs.end(), x);
  double d = kInf;
  if (it != xs.end()) d = std::min(d, *it - x);
  if (it != xs.begin()) d = std::min(d, x - *(it - 1));
  return d;
}

// max of dist(., E) over [u, v]: attained at an end or at a midpoint of two
// consecutive points of E.
double max_dist_on(std::span<const double> xs, double u, double v) {
  double best = std::max(dist_to_set(xs, u), dist_to_set(xs, v));
  auto first = std::lower_bound(xs.begin(), xs.end(), u);
  if (first != xs.begin()) --first;
  for (auto it = first; it != xs.end() && it + 1 != xs.end() && *it <= v; ++it) {
    const double mid = 0.5 * (*it + *(it + 1));
    if (mid >= u && mid <= v) best = std::max(best, dist_to_set(xs, mid));
  }
  return best;
}

void require_exponent(double p) {
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "exponent must satisfy p > 1");
}

}  // namespace

SampleSet AugmentedSet::merged() const {
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(base.size() + grid.size());
  ys.reserve(base.size() + grid.size());
  std::size_t i = 0;
  std::size_t g = 0;
  while (i < base.size() || g < grid.size()) {
    if (g == grid.size() || (i < base.size() && base.x(i) < grid[g])) {
      xs.push_back(base.x(i));
      ys.push_back(base.y(i));
      ++i;
    } else {
      xs.push_back(grid[g]);
      ys.push_back(0.0);
      ++g;
    }
  }
  return SampleSet(std::move(xs), std::move(ys));
}

std::size_t tail_grid_count(int m) { return static_cast<std::size_t>(2 * m + 1); }

AugmentedSet build_grid(const SampleSet& data, int m) {
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  if (data.empty()) throw Error(ErrorCode::TooFewPoints, "grid needs #E >= 1");
  AugmentedSet out;
  out.base = data;
  out.truncation = tail_grid_count(m);
  const auto count = static_cast<int>(out.truncation);

  const double lo = data.x(0);
  for (int n = count; n >= 1; --n) out.grid.push_back(lo - 2.0 * n);
  for (std::size_t j = 0; j + 1 < data.size(); ++j) {
    const double a = data.x(j);
    const double b = data.x(j + 1);
    const double len = b - a;
    if (!(len > 4.0)) continue;
    const double n_j = std::floor(len / 2.0);
    const double step = len / n_j;
    for (int n = 1; n < static_cast<int>(n_j); ++n) out.grid.push_back(a + step * n);
  }
  const double hi = data.x(data.size() - 1);
  for (int n = 1; n <= count; ++n) out.grid.push_back(hi + 2.0 * n);
  return out;
}

SampleSet augment_small_set(const SampleSet& data, int m) {
  if (data.empty()) throw Error(ErrorCode::TooFewPoints, "augmentation needs #E >= 1");
  if (data.size() > static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::NotApplicable, "augmentation applies only when #E <= m");
  }
  std::vector<double> xs(data.xs().begin(), data.xs().end());
  std::vector<double> ys(data.ys().begin(), data.ys().end());
  const double last = xs.back();
  const int n = static_cast<int>(data.size()) - 1;
  for (int k = n + 1; k <= m; ++k) {
    xs.push_back(last + 2.0 * (k - n));
    ys.push_back(0.0);
  }
  return SampleSet(std::move(xs), std::move(ys));
}

WmpExtension wmp_extend_detailed(const SampleSet& data, int m, double p) {
  if (!(p > 1.0) || std::isinf(p)) {
    throw Error(ErrorCode::InvalidArgument, "W^m_p extension needs p in (1, inf)");
  }
  const SampleSet base =
      data.size() <= static_cast<std::size_t>(m) ? augment_small_set(data, m) : data;
  WmpExtension out;
  out.augmented = build_grid(base, m);
  const SampleSet merged = out.augmented.merged();
  const WhitneyField field = build_field(merged, m);

  // The outermost m grid points on each side must carry zero jets, so every
  // gap beyond them is identically zero and truncating the grid is exact.
  const auto checked = static_cast<std::size_t>(m);
  for (std::size_t i = 0; i < checked; ++i) {
    const Poly& left = field.jets[i];
    const Poly& right = field.jets[field.jets.size() - 1 - i];
    if (!left.is_zero() || !right.is_zero()) {
      throw Error(ErrorCode::ZeroTailViolation,
                  "outermost retained grid jets are not identically zero");
    }
  }
  out.zero_jets_checked = checked;
  out.extension = assemble_extension(field);
  return out;
}

PiecewiseExtension wmp_extend(const SampleSet& data, int m, double p) {
  return wmp_extend_detailed(data, m, p).extension;
}

double wmp_norm(const PiecewiseExtension& ext, double p) {
  require_exponent(p);
  if (!ext.left_tail.is_zero() || !ext.right_tail.is_zero()) {
    throw Error(ErrorCode::NonCompactSupport, "W^m_p norm needs vanishing tails");
  }
  const bool sup_norm = std::isinf(p);
  double total = 0.0;
  for (int k = 0; k <= ext.m; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < ext.gap_polys.size(); ++j) {
      const double part = poly_p_integral(ext.gap_polys[j].derivative(k), ext.breaks[j],
                                          ext.breaks[j + 1], p);
      acc = sup_norm ? std::max(acc, part) : acc + part;
    }
    total += sup_norm ? acc : std::pow(acc, 1.0 / p);
  }
  return total;
}

double support_radius(const PiecewiseExtension& ext, const SampleSet& data) {
  if (!ext.left_tail.is_zero() || !ext.right_tail.is_zero()) return kInf;
  double radius = 0.0;
  for (std::size_t j = 0; j < ext.gap_polys.size(); ++j) {
    if (ext.gap_polys[j].is_zero()) continue;
    radius = std::max(radius, max_dist_on(data.xs(), ext.breaks[j], ext.breaks[j + 1]));
  }
  return radius;
}

}  // namespace sobtrace
