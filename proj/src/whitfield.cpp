#include "sobtrace/whitfield.hpp"

#include <cmath>
#include <string>

#include "sobtrace/errors.hpp"
#include "sobtrace/knotsel.hpp"

namespace sobtrace {

namespace {

void require_trace_exponent(double p) {
  if (!(p > 1.0) || std::isinf(p)) {
    throw Error(ErrorCode::InvalidArgument, "trace functionals need p in (1, inf)");
  }
}

// Contribution of the ordered knot pair (j, k), j < k, before the 1/p root.
double pair_term(const WhitneyField& field, std::size_t j, std::size_t k, double p) {
  const double xj = field.knots[j];
  const double gap = field.knots[k] - xj;
  double sum = 0.0;
  for (int i = 0; i < field.m; ++i) {
    const double diff = field.jets[j].derivative_at(xj, i) - field.jets[k].derivative_at(xj, i);
    sum += std::pow(std::abs(diff), p) / std::pow(gap, (field.m - i) * p - 1.0);
  }
  return sum;
}

void enumerate_paths(const std::vector<std::vector<double>>& w, std::size_t last, double sum,
                     double& best) {
  if (sum > best) best = sum;
  for (std::size_t next = last + 1; next < w.size(); ++next) {
    enumerate_paths(w, next, sum + w[last][next], best);
  }
}

}  // namespace

WhitneyField build_field(const SampleSet& data, int m) {
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  if (data.size() < static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::TooFewPoints,
                "need #E >= m = " + std::to_string(m) + " to build the Whitney field");
  }
  WhitneyField field;
  field.m = m;
  field.knots.assign(data.xs().begin(), data.xs().end());
  field.jets.reserve(data.size());
  for (const KnotEntry& entry : knot_table(data.xs(), m)) {
    const auto start = entry.window_start;
    const auto count = entry.s_set.size();
    field.jets.push_back(lagrange_poly(data.xs().subspan(start, count),
                                       data.ys().subspan(start, count), entry.chain.front()));
    // P_x(x) = f(x) holds exactly; pin it rather than keep the rounded value.
    field.jets.back().coeffs[0] = data.y(field.jets.size() - 1);
  }
  return field;
}

double jet_sequence_functional(const WhitneyField& field, double p) {
  require_trace_exponent(p);
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < field.knots.size(); ++j) sum += pair_term(field, j, j + 1, p);
  return std::pow(sum, 1.0 / p);
}

double jet_variational_exact(const WhitneyField& field, double p) {
  require_trace_exponent(p);
  const std::size_t n = field.knots.size();
  if (n > kJetEnumerationGuard) {
    throw Error(ErrorCode::InstanceTooLarge,
                "exact jet functional enumerates at most 18 knots, got " + std::to_string(n));
  }
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) w[j][k] = pair_term(field, j, k, p);
  }
  double best = 0.0;
  for (std::size_t start = 0; start < n; ++start) enumerate_paths(w, start, 0.0, best);
  return std::pow(best, 1.0 / p);
}

}  // namespace sobtrace
