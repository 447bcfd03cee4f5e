#pragma once

// Scalar trace functionals of data (E, f): variational sups by enumeration,
// their single-sequence forms, the local and global sharp maximal functions
// with their L_p norms, and the subsequence inequality.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sobtrace/polycore.hpp"

namespace sobtrace {

inline constexpr std::size_t kNEnumerationGuard = 16;
inline constexpr std::size_t kNWEnumerationGuard = 14;
/// Cap on the number of (k+1)-subsets the sharp functions may enumerate.
inline constexpr std::size_t kSubsetGuard = 2'000'000;

/// min{1, x_{i+m} - x_i} with x_j = +inf past the last index; shared by
/// every functional that carries the W^m_p weight.
double wmp_weight(std::span<const double> xs, std::size_t i, int m);

/// (sum_i (x_{i+m}-x_i) |Delta^m f[x_i..x_{i+m}]|^p)^{1/p} over the whole
/// sequence. Throws TooFewPoints if #E <= m.
double n_sequence(const SampleSet& data, int m, double p);

/// Supremum of the same sum over all subsequences with at least m+1 points.
/// Throws InstanceTooLarge above 16 points.
double n_variational_exact(const SampleSet& data, int m, double p);

/// Single-sequence W^m_p functional with k up to min{m, #E-1}.
double nw_sequence(const SampleSet& data, int m, double p);

/// Supremum over subsequences (>= m+1 points) of the k = 0..m double sum.
/// Throws InstanceTooLarge above 14 points, TooFewPoints if #E <= m.
double nw_variational_exact(const SampleSet& data, int m, double p);

/// f#_k(x) for 0 <= k <= m (distance-weighted when k = m); 0 when no
/// (k+1)-subset lies within distance 1 of x.
double sharp_k_eval(const SampleSet& data, int m, int k, double x);

/// ||f#_k||_{L_p(R)}; exact (piecewise constant for k < m, closed-form
/// envelope integration for k = m).
double sharp_k_lp_norm(const SampleSet& data, int m, int k, double p);

/// Global sharp function: sup over x_0 < ... < x_m of
/// |Delta^{m-1}f[x_0..x_{m-1}] - Delta^{m-1}f[x_1..x_m]| / (|x-x_0| + |x-x_m|).
double sharp_m_global_eval(const SampleSet& data, int m, double x);

/// sup_S |Delta^m f[S]| diam S / diam({x} u S); lies between the global
/// sharp function and twice it.
double weighted_sharp_eval(const SampleSet& data, int m, double x);

/// ||(Delta^m f)#||_{L_p(R)} including both unbounded tails in closed form.
double sharp_m_global_lp_norm(const SampleSet& data, int m, double p);

/// max over consecutive (m+1)-windows of |Delta^m f|.
double n_infty(const SampleSet& data, int m);

/// Brute-force max over all (m+1)-subsets; reference for n_infty.
double n_infty_all_subsets(const SampleSet& data, int m);

struct SubsequenceSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// LHS = (t_k - t_0)|Delta^k g[t]|^p and RHS = k^{p-1} sum_j
/// (s_{j+k}-s_j)|Delta^k g[s_j..s_{j+k}]|^p, with t = s[sub_indices].
/// Throws BadSubsequence unless sub_indices is strictly increasing, has k+1
/// entries and contains the first and last index.
SubsequenceSides subsequence_inequality_check(const SampleSet& data, int k, double p,
                                              std::span<const std::size_t> sub_indices);

/// All functionals the guards permit for one dataset; blocked entries are
/// empty and carry a reason.
struct TraceReport {
  int m = 1;
  double p = 2.0;
  std::size_t points = 0;
  std::optional<double> n_exact;
  std::optional<double> n_sequence;
  std::optional<double> n_infty;
  std::optional<double> nw_exact;
  std::optional<double> nw_sequence;
  std::vector<std::optional<double>> sharp_norms;  // k = 0..m
  std::optional<double> sharp_m_global_norm;
  std::optional<double> extension_seminorm;
  std::optional<double> extension_wnorm;
  std::vector<std::pair<std::string, std::optional<double>>> ratios;
  std::vector<std::pair<std::string, std::string>> null_reasons;
};

TraceReport compute_trace_report(const SampleSet& data, int m, double p);

}  // namespace sobtrace
