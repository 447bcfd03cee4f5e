#include "sobtrace/functionals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sobtrace/errors.hpp"

namespace sobtrace {

namespace {

constexpr int kMaxOrder = 15;

void require_trace_exponent(double p) {
  if (!(p > 1.0) || std::isinf(p)) {
    throw Error(ErrorCode::InvalidArgument, "trace functionals need p in (1, inf)");
  }
}

void require_order(int m) {
  if (m < 1 || m > kMaxOrder) {
    throw Error(ErrorCode::UnsupportedOrder, "order m must lie in [1, 15]");
  }
}

// Delta^k over the points data[idx[0..count)], without allocating.
double dd_indexed(const SampleSet& data, const std::size_t* idx, std::size_t count) {
  std::array<double, kMaxOrder + 2> xs{};
  std::array<double, kMaxOrder + 2> t{};
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = data.x(idx[i]);
    t[i] = data.y(idx[i]);
  }
  for (std::size_t level = 1; level < count; ++level) {
    for (std::size_t i = 0; i + level < count; ++i) {
      t[i] = (t[i + 1] - t[i]) / (xs[i + level] - xs[i]);
    }
  }
  return t[0];
}

// Delta^k over the consecutive run data[first .. first+count).
double dd_run(const SampleSet& data, std::size_t first, std::size_t count) {
  return divided_difference(data.xs().subspan(first, count), data.ys().subspan(first, count));
}

double choose_count(std::size_t n, std::size_t r) {
  if (r > n) return 0.0;
  return binomial(static_cast<int>(n), static_cast<int>(r));
}

void require_subset_budget(std::size_t n, std::size_t r) {
  if (choose_count(n, r) > static_cast<double>(kSubsetGuard)) {
    throw Error(ErrorCode::InstanceTooLarge,
                "too many " + std::to_string(r) + "-subsets of " + std::to_string(n) + " points");
  }
}

// Calls fn(idx) for every increasing r-subset of {0..n-1}.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t r, Fn&& fn) {
  if (r == 0 || r > n) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// ------------------------------------------------------------ enumeration

struct NSearch {
  const SampleSet& data;
  std::size_t m;
  double p;
  std::vector<std::size_t> chosen;
  double best = 0.0;

  void visit(double sum) {
    if (chosen.size() >= m + 1) best = std::max(best, sum);
    const std::size_t last = chosen.back();
    for (std::size_t next = last + 1; next < data.size(); ++next) {
      chosen.push_back(next);
      double add = 0.0;
      if (chosen.size() >= m + 1) {
        const std::size_t* w = chosen.data() + chosen.size() - (m + 1);
        add = (data.x(w[m]) - data.x(w[0])) * std::pow(std::abs(dd_indexed(data, w, m + 1)), p);
      }
      visit(sum + add);
      chosen.pop_back();
    }
  }
};

struct NWSearch {
  const SampleSet& data;
  std::size_t m;
  double p;
  std::vector<std::size_t> chosen;
  std::vector<double> partial;  // T_i: sum over k with i+k <= q of |Delta^k|^p
  double best = 0.0;

  void visit(double fixed_sum) {
    const std::size_t size = chosen.size();
    if (size >= m + 1) {
      double value = fixed_sum;
      const std::size_t q = size - 1;
      for (std::size_t i = q + 1 > m ? q + 1 - m : 0; i <= q; ++i) value += partial[i];
      best = std::max(best, value);
    }
    for (std::size_t next = chosen.back() + 1; next < data.size(); ++next) {
      chosen.push_back(next);
      partial.push_back(0.0);
      const std::size_t q = chosen.size() - 1;
      for (std::size_t k = 0; k <= std::min(m, q); ++k) {
        const std::size_t i = q - k;
        partial[i] += std::pow(std::abs(dd_indexed(data, chosen.data() + i, k + 1)), p);
      }
      double next_fixed = fixed_sum;
      std::vector<double> saved;
      if (q >= m) {
        const std::size_t i = q - m;
        const double w = std::min(1.0, data.x(chosen[q]) - data.x(chosen[i]));
        next_fixed += w * partial[i];
      }
      visit(next_fixed);
      for (std::size_t k = 0; k <= std::min(m, q); ++k) {
        const std::size_t i = q - k;
        if (i < q) partial[i] -= std::pow(std::abs(dd_indexed(data, chosen.data() + i, k + 1)), p);
      }
      partial.pop_back();
      chosen.pop_back();
    }
  }
};

// --------------------------------------------------- envelope integration

// g(x) = amp / (alpha + beta x), positive on the pieces where it is used.
struct Candidate {
  double amp;
  double alpha;
  double beta;

  double operator()(double x) const { return amp / (alpha + beta * x); }
};

// int_{x0}^{x1} g^p, closed form; x0 may be -inf and x1 +inf when the
// denominator grows in that direction.
double candidate_integral(const Candidate& g, double x0, double x1, double p) {
  if (g.amp == 0.0) return 0.0;
  if (g.beta == 0.0) return std::pow(g.amp / g.alpha, p) * (x1 - x0);
  auto prim = [&](double x) {
    if (std::isinf(x)) return 0.0;
    return std::pow(g.alpha + g.beta * x, 1.0 - p);
  };
  return std::pow(g.amp, p) * (prim(x1) - prim(x0)) / (g.beta * (1.0 - p));
}

// int over (c0, c1) of (max_j g_j)^p. Pairwise crossings split the cell
// into pieces with a single dominating candidate.
double envelope_integral(const std::vector<Candidate>& cands, double c0, double c1, double p) {
  if (cands.empty() || !(c0 < c1)) return 0.0;
  std::vector<double> cuts{c0};
  for (std::size_t a = 0; a < cands.size(); ++a) {
    for (std::size_t b = a + 1; b < cands.size(); ++b) {
      const Candidate& u = cands[a];
      const Candidate& v = cands[b];
      const double coef = u.amp * v.beta - v.amp * u.beta;
      if (coef == 0.0) continue;
      const double x = (v.amp * u.alpha - u.amp * v.alpha) / coef;
      if (x > c0 && x < c1) cuts.push_back(x);
    }
  }
  cuts.push_back(c1);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double x0 = cuts[i];
    const double x1 = cuts[i + 1];
    double probe = 0.0;
    if (std::isinf(x0) && std::isinf(x1)) {
      probe = 0.0;
    } else if (std::isinf(x0)) {
      probe = x1 - 1.0;
    } else if (std::isinf(x1)) {
      probe = x0 + 1.0;
    } else {
      probe = 0.5 * (x0 + x1);
    }
    std::size_t arg = 0;
    double top = -1.0;
    for (std::size_t j = 0; j < cands.size(); ++j) {
      const double v = cands[j](probe);
      if (v > top) {
        top = v;
        arg = j;
      }
    }
    total += candidate_integral(cands[arg], x0, x1, p);
  }
  return total;
}

// amp[lo][hi] = max over (m+1)-subsets with endpoints lo < hi of
// |Delta^m f[S]| (x_hi - x_lo). Only subsets accepted by `keep` count.
template <typename Keep>
std::vector<std::vector<double>> endpoint_amplitudes(const SampleSet& data, std::size_t m,
                                                     Keep&& keep) {
  const std::size_t n = data.size();
  std::vector<std::vector<double>> amp(n, std::vector<double>(n, 0.0));
  for_each_subset(n, m + 1, [&](const std::vector<std::size_t>& idx) {
    if (!keep(idx)) return;
    const double a = std::abs(dd_indexed(data, idx.data(), m + 1)) *
                     (data.x(idx.back()) - data.x(idx.front()));
    double& slot = amp[idx.front()][idx.back()];
    slot = std::max(slot, a);
  });
  return amp;
}

std::vector<std::vector<double>> global_amplitudes(const SampleSet& data, int m) {
  require_subset_budget(data.size(), static_cast<std::size_t>(m) + 1);
  return endpoint_amplitudes(data, static_cast<std::size_t>(m),
                             [](const std::vector<std::size_t>&) { return true; });
}

}  // namespace

// ------------------------------------------------------------------ weights

double wmp_weight(std::span<const double> xs, std::size_t i, int m) {
  const std::size_t j = i + static_cast<std::size_t>(m);
  if (j >= xs.size()) return 1.0;
  return std::min(1.0, xs[j] - xs[i]);
}

// ------------------------------------------------------------- N functionals

double n_sequence(const SampleSet& data, int m, double p) {
  require_order(m);
  require_trace_exponent(p);
  const auto mm = static_cast<std::size_t>(m);
  if (data.size() <= mm) throw Error(ErrorCode::TooFewPoints, "need #E >= m+1");
  double sum = 0.0;
  for (std::size_t i = 0; i + mm < data.size(); ++i) {
    sum += (data.x(i + mm) - data.x(i)) * std::pow(std::abs(dd_run(data, i, mm + 1)), p);
  }
  return std::pow(sum, 1.0 / p);
}

double n_variational_exact(const SampleSet& data, int m, double p) {
  require_order(m);
  require_trace_exponent(p);
  if (data.size() <= static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::TooFewPoints, "need #E >= m+1");
  }
  if (data.size() > kNEnumerationGuard) {
    throw Error(ErrorCode::InstanceTooLarge,
                "exact N enumerates at most 16 points, got " + std::to_string(data.size()));
  }
  NSearch search{data, static_cast<std::size_t>(m), p, {}, 0.0};
  for (std::size_t start = 0; start < data.size(); ++start) {
    search.chosen.assign(1, start);
    search.visit(0.0);
  }
  return std::pow(search.best, 1.0 / p);
}

double nw_sequence(const SampleSet& data, int m, double p) {
  require_order(m);
  require_trace_exponent(p);
  const std::size_t n = data.size();
  const std::size_t top = std::min(static_cast<std::size_t>(m), n - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k <= top; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      sum += wmp_weight(data.xs(), i, m) * std::pow(std::abs(dd_run(data, i, k + 1)), p);
    }
  }
  return std::pow(sum, 1.0 / p);
}

double nw_variational_exact(const SampleSet& data, int m, double p) {
  require_order(m);
  require_trace_exponent(p);
  if (data.size() <= static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::TooFewPoints, "need #E >= m+1");
  }
  if (data.size() > kNWEnumerationGuard) {
    throw Error(ErrorCode::InstanceTooLarge,
                "exact NW enumerates at most 14 points, got " + std::to_string(data.size()));
  }
  NWSearch search{data, static_cast<std::size_t>(m), p, {}, {}, 0.0};
  for (std::size_t start = 0; start < data.size(); ++start) {
    search.chosen.assign(1, start);
    search.partial.assign(1, std::pow(std::abs(data.y(start)), p));
    search.visit(0.0);
  }
  return std::pow(search.best, 1.0 / p);
}

// -------------------------------------------------------------- sharp k

double sharp_k_eval(const SampleSet& data, int m, int k, double x) {
  require_order(m);
  if (k < 0 || k > m) throw Error(ErrorCode::BadOrder, "sharp order k must lie in [0, m]");
  const std::size_t n = data.size();
  const auto r = static_cast<std::size_t>(k) + 1;
  if (n < r) return 0.0;
  require_subset_budget(n, r);
  std::vector<bool> near(n);
  for (std::size_t i = 0; i < n; ++i) near[i] = std::abs(data.x(i) - x) <= 1.0;
  double best = 0.0;
  for_each_subset(n, r, [&](const std::vector<std::size_t>& idx) {
    if (std::none_of(idx.begin(), idx.end(), [&](std::size_t i) { return near[i]; })) return;
    double v = std::abs(dd_indexed(data, idx.data(), r));
    if (k == m) {
      const double lo = data.x(idx.front());
      const double hi = data.x(idx.back());
      v *= (hi - lo) / (std::max(x, hi) - std::min(x, lo));
    }
    best = std::max(best, v);
  });
  return best;
}

double sharp_k_lp_norm(const SampleSet& data, int m, int k, double p) {
  require_order(m);
  require_trace_exponent(p);
  if (k < 0 || k > m) throw Error(ErrorCode::BadOrder, "sharp order k must lie in [0, m]");
  const std::size_t n = data.size();
  const auto r = static_cast<std::size_t>(k) + 1;
  if (n < r) return 0.0;
  require_subset_budget(n, r);

  // Within a cell the set of knots within distance 1 is fixed; for k = m
  // the knots themselves are also cut points so each candidate is a single
  // rational branch.
  std::vector<double> cuts;
  for (double y : data.xs()) {
    cuts.push_back(y - 1.0);
    cuts.push_back(y + 1.0);
    if (k == m) cuts.push_back(y);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  struct SubsetInfo {
    std::vector<std::size_t> idx;
    double value;  // |Delta^k f[S]|, times diam S when k = m
  };
  std::vector<SubsetInfo> subsets;
  for_each_subset(n, r, [&](const std::vector<std::size_t>& idx) {
    double v = std::abs(dd_indexed(data, idx.data(), r));
    if (k == m) v *= data.x(idx.back()) - data.x(idx.front());
    if (v > 0.0) subsets.push_back({idx, v});
  });

  double total = 0.0;
  std::vector<bool> near(n);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double c0 = cuts[c];
    const double c1 = cuts[c + 1];
    const double mid = 0.5 * (c0 + c1);
    for (std::size_t i = 0; i < n; ++i) near[i] = std::abs(data.x(i) - mid) <= 1.0;
    auto feasible = [&](const SubsetInfo& s) {
      return std::any_of(s.idx.begin(), s.idx.end(), [&](std::size_t i) { return near[i]; });
    };
    if (k < m) {
      double best = 0.0;
      for (const auto& s : subsets) {
        if (s.value > best && feasible(s)) best = s.value;
      }
      total += std::pow(best, p) * (c1 - c0);
      continue;
    }
    std::vector<std::vector<double>> amp(n, std::vector<double>(n, 0.0));
    for (const auto& s : subsets) {
      if (!feasible(s)) continue;
      double& slot = amp[s.idx.front()][s.idx.back()];
      slot = std::max(slot, s.value);
    }
    std::vector<Candidate> cands;
    for (std::size_t lo = 0; lo < n; ++lo) {
      for (std::size_t hi = lo + 1; hi < n; ++hi) {
        if (amp[lo][hi] == 0.0) continue;
        const double xl = data.x(lo);
        const double xh = data.x(hi);
        // diam({x} u S) is linear on the cell.
        if (mid < xl) {
          cands.push_back({amp[lo][hi], xh, -1.0});
        } else if (mid > xh) {
          cands.push_back({amp[lo][hi], -xl, 1.0});
        } else {
          cands.push_back({amp[lo][hi], xh - xl, 0.0});
        }
      }
    }
    total += envelope_integral(cands, c0, c1, p);
  }
  return std::pow(total, 1.0 / p);
}

// ---------------------------------------------------------- global sharp

double sharp_m_global_eval(const SampleSet& data, int m, double x) {
  require_order(m);
  const auto amp = global_amplitudes(data, m);
  double best = 0.0;
  for (std::size_t lo = 0; lo < data.size(); ++lo) {
    for (std::size_t hi = lo + 1; hi < data.size(); ++hi) {
      if (amp[lo][hi] == 0.0) continue;
      best = std::max(best,
                      amp[lo][hi] / (std::abs(x - data.x(lo)) + std::abs(x - data.x(hi))));
    }
  }
  return best;
}

double weighted_sharp_eval(const SampleSet& data, int m, double x) {
  require_order(m);
  const auto amp = global_amplitudes(data, m);
  double best = 0.0;
  for (std::size_t lo = 0; lo < data.size(); ++lo) {
    for (std::size_t hi = lo + 1; hi < data.size(); ++hi) {
      if (amp[lo][hi] == 0.0) continue;
      const double diam = std::max(x, data.x(hi)) - std::min(x, data.x(lo));
      best = std::max(best, amp[lo][hi] / diam);
    }
  }
  return best;
}

double sharp_m_global_lp_norm(const SampleSet& data, int m, double p) {
  require_order(m);
  require_trace_exponent(p);
  const std::size_t n = data.size();
  if (n <= static_cast<std::size_t>(m)) throw Error(ErrorCode::TooFewPoints, "need #E >= m+1");
  const auto amp = global_amplitudes(data, m);

  std::vector<double> cuts{-kInf};
  cuts.insert(cuts.end(), data.xs().begin(), data.xs().end());
  cuts.push_back(kInf);
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double c0 = cuts[c];
    const double c1 = cuts[c + 1];
    const double probe = std::isinf(c0) ? c1 - 1.0 : (std::isinf(c1) ? c0 + 1.0 : 0.5 * (c0 + c1));
    std::vector<Candidate> cands;
    for (std::size_t lo = 0; lo < n; ++lo) {
      for (std::size_t hi = lo + 1; hi < n; ++hi) {
        if (amp[lo][hi] == 0.0) continue;
        const double xl = data.x(lo);
        const double xh = data.x(hi);
        // |x - x_lo| + |x - x_hi| is linear on the cell.
        if (probe < xl) {
          cands.push_back({amp[lo][hi], xl + xh, -2.0});
        } else if (probe > xh) {
          cands.push_back({amp[lo][hi], -(xl + xh), 2.0});
        } else {
          cands.push_back({amp[lo][hi], xh - xl, 0.0});
        }
      }
    }
    total += envelope_integral(cands, c0, c1, p);
  }
  return std::pow(total, 1.0 / p);
}

// ---------------------------------------------------------------- N_infty

double n_infty(const SampleSet& data, int m) {
  require_order(m);
  const auto mm = static_cast<std::size_t>(m);
  if (data.size() <= mm) throw Error(ErrorCode::TooFewPoints, "need #E >= m+1");
  double best = 0.0;
  for (std::size_t i = 0; i + mm < data.size(); ++i) {
    best = std::max(best, std::abs(dd_run(data, i, mm + 1)));
  }
  return best;
}

double n_infty_all_subsets(const SampleSet& data, int m) {
  require_order(m);
  const auto r = static_cast<std::size_t>(m) + 1;
  if (data.size() < r) throw Error(ErrorCode::TooFewPoints, "need #E >= m+1");
  require_subset_budget(data.size(), r);
  double best = 0.0;
  for_each_subset(data.size(), r, [&](const std::vector<std::size_t>& idx) {
    best = std::max(best, std::abs(dd_indexed(data, idx.data(), r)));
  });
  return best;
}

// ----------------------------------------------------------- subsequences

SubsequenceSides subsequence_inequality_check(const SampleSet& data, int k, double p,
                                              std::span<const std::size_t> sub_indices) {
  if (k < 1 || k > kMaxOrder) throw Error(ErrorCode::UnsupportedOrder, "k must lie in [1, 15]");
  if (!(p >= 1.0) || std::isinf(p)) throw Error(ErrorCode::InvalidArgument, "need finite p >= 1");
  const std::size_t n = data.size();
  const auto kk = static_cast<std::size_t>(k);
  if (sub_indices.size() != kk + 1 || sub_indices.front() != 0 || sub_indices.back() != n - 1) {
    throw Error(ErrorCode::BadSubsequence,
                "subsequence needs k+1 indices including the first and last point");
  }
  for (std::size_t i = 0; i + 1 < sub_indices.size(); ++i) {
    if (!(sub_indices[i] < sub_indices[i + 1])) {
      throw Error(ErrorCode::BadSubsequence, "subsequence indices must be strictly increasing");
    }
  }
  SubsequenceSides sides;
  sides.lhs = (data.x(n - 1) - data.x(0)) *
              std::pow(std::abs(dd_indexed(data, sub_indices.data(), kk + 1)), p);
  double sum = 0.0;
  for (std::size_t j = 0; j + kk < n; ++j) {
    sum += (data.x(j + kk) - data.x(j)) * std::pow(std::abs(dd_run(data, j, kk + 1)), p);
  }
  sides.rhs = std::pow(static_cast<double>(k), p - 1.0) * sum;
  return sides;
}

}  // namespace sobtrace
