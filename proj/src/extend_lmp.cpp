#include "sobtrace/extend_lmp.hpp"

#include <algorithm>
#include <cmath>

#include "sobtrace/errors.hpp"

namespace sobtrace {

namespace {

// With exactly m+1 knots the Lagrange polynomial L_E[f] has constant m-th
// derivative m!|D^m f|, which is optimal. Use it on the hull and continue
// with its degree m-1 Taylor polynomials, so F stays C^{m-1}.
PiecewiseExtension simplex_extension(const WhitneyField& field) {
  std::vector<double> values;
  values.reserve(field.jets.size());
  for (const Poly& jet : field.jets) values.push_back(jet.coeffs[0]);
  PiecewiseExtension ext;
  ext.m = field.m;
  ext.breaks = field.knots;
  const Poly lag = lagrange_poly(field.knots, values);
  auto taylor = [&](double at) {
    Poly q = lagrange_poly(field.knots, values, at);
    q.coeffs.resize(static_cast<std::size_t>(field.m));
    return q;
  };
  ext.left_tail = taylor(field.knots.front());
  ext.right_tail = taylor(field.knots.back());
  ext.gap_polys.assign(field.knots.size() - 1, lag);
  ext.knot_jets.assign(field.knots.size(), lag);
  return ext;
}

}  // namespace

PiecewiseExtension assemble_extension(const WhitneyField& field) {
  if (field.knots.empty() || field.knots.size() != field.jets.size()) {
    throw Error(ErrorCode::TooFewPoints, "extension needs a nonempty Whitney field");
  }
  PiecewiseExtension ext;
  ext.m = field.m;
  if (field.knots.size() == static_cast<std::size_t>(field.m) + 1) return simplex_extension(field);
  ext.breaks = field.knots;
  ext.knot_jets = field.jets;
  ext.left_tail = field.jets.front();
  ext.right_tail = field.jets.back();
  ext.gap_polys.reserve(field.knots.size() - 1);
  for (std::size_t j = 0; j + 1 < field.knots.size(); ++j) {
    ext.gap_polys.push_back(hermite_gap(field.jets[j], field.jets[j + 1], field.knots[j],
                                        field.knots[j + 1], field.m));
  }
  return ext;
}

double extension_eval(const PiecewiseExtension& ext, double x, int order) {
  if (order < 0) throw Error(ErrorCode::BadOrder, "derivative order must be >= 0");
  if (order > 2 * ext.m - 1) return 0.0;
  const auto& b = ext.breaks;
  const auto it = std::upper_bound(b.begin(), b.end(), x);
  if (it != b.begin() && *(it - 1) == x && order < ext.m) {
    return ext.knot_jets[static_cast<std::size_t>(it - b.begin()) - 1].derivative_at(x, order);
  }
  if (it == b.begin()) return ext.left_tail.derivative_at(x, order);
  if (it == b.end()) return ext.right_tail.derivative_at(x, order);
  return ext.gap_polys[static_cast<std::size_t>(it - b.begin()) - 1].derivative_at(x, order);
}

double lmp_seminorm(const PiecewiseExtension& ext, double p) {
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "seminorm needs p in (1, inf]");
  const bool sup_norm = std::isinf(p);
  double acc = 0.0;
  for (std::size_t j = 0; j < ext.gap_polys.size(); ++j) {
    const Poly dm = ext.gap_polys[j].derivative(ext.m);
    const double part = poly_p_integral(dm, ext.breaks[j], ext.breaks[j + 1], p);
    acc = sup_norm ? std::max(acc, part) : acc + part;
  }
  return sup_norm ? acc : std::pow(acc, 1.0 / p);
}

double smoothness_report(const PiecewiseExtension& ext) {
  double worst = 0.0;
  const std::size_t n = ext.breaks.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Poly& left = j == 0 ? ext.left_tail : ext.gap_polys[j - 1];
    const Poly& right = j + 1 == n ? ext.right_tail : ext.gap_polys[j];
    const double x = ext.breaks[j];
    for (int i = 0; i < ext.m; ++i) {
      const double l = left.derivative_at(x, i);
      const double r = right.derivative_at(x, i);
      worst = std::max(worst, std::abs(l - r) / (1.0 + std::max(std::abs(l), std::abs(r))));
    }
  }
  return worst;
}

}  // namespace sobtrace
