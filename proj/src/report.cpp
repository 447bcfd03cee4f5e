#include <cmath>
#include <functional>
#include <string>

#include "sobtrace/errors.hpp"
#include "sobtrace/extend_lmp.hpp"
#include "sobtrace/extend_wmp.hpp"
#include "sobtrace/functionals.hpp"
#include "sobtrace/whitfield.hpp"

namespace sobtrace {

namespace {

std::optional<double> attempt(TraceReport& report, const std::string& name,
                              const std::function<double()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    report.null_reasons.emplace_back(name, std::string(to_string(e.code())) + ": " + e.what());
    return std::nullopt;
  }
}

std::optional<double> quotient(const std::optional<double>& a, const std::optional<double>& b) {
  const double den = b.value_or(0.0);
  if (!a.has_value() || den == 0.0) return std::nullopt;
  return a.value_or(0.0) / den;
}

}  // namespace

TraceReport compute_trace_report(const SampleSet& data, int m, double p) {
  if (m < 1) throw Error(ErrorCode::UnsupportedOrder, "order m must be >= 1");
  if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "exponent must satisfy p > 1");
  TraceReport r;
  r.m = m;
  r.p = p;
  r.points = data.size();
  const bool sup_norm = std::isinf(p);
  const std::string finite_only = "InvalidArgument: defined for finite p only";

  r.n_infty = attempt(r, "n_infty", [&] { return n_infty(data, m); });
  if (sup_norm) {
    for (const char* name : {"n_exact", "n_sequence", "nw_exact", "nw_sequence",
                             "sharp_m_global_norm", "extension_wnorm"}) {
      r.null_reasons.emplace_back(name, finite_only);
    }
    r.sharp_norms.assign(static_cast<std::size_t>(m) + 1, std::nullopt);
    r.null_reasons.emplace_back("sharp_norms", finite_only);
  } else {
    r.n_exact = attempt(r, "n_exact", [&] { return n_variational_exact(data, m, p); });
    r.n_sequence = attempt(r, "n_sequence", [&] { return n_sequence(data, m, p); });
    r.nw_exact = attempt(r, "nw_exact", [&] { return nw_variational_exact(data, m, p); });
    r.nw_sequence = attempt(r, "nw_sequence", [&] { return nw_sequence(data, m, p); });
    for (int k = 0; k <= m; ++k) {
      r.sharp_norms.push_back(attempt(r, "sharp_norms[" + std::to_string(k) + "]",
                                      [&] { return sharp_k_lp_norm(data, m, k, p); }));
    }
    r.sharp_m_global_norm =
        attempt(r, "sharp_m_global_norm", [&] { return sharp_m_global_lp_norm(data, m, p); });
    r.extension_wnorm =
        attempt(r, "extension_wnorm", [&] { return wmp_norm(wmp_extend(data, m, p), p); });
  }
  r.extension_seminorm = attempt(r, "extension_seminorm", [&] {
    return lmp_seminorm(assemble_extension(build_field(data, m)), p);
  });

  if (sup_norm) {
    std::optional<double> denom;
    if (r.n_infty) denom = factorial(m) * *r.n_infty;
    r.ratios.emplace_back("extension_seminorm/(m!*n_infty)", quotient(r.extension_seminorm, denom));
    return r;
  }
  double total = 0.0;
  bool complete = true;
  for (const auto& s : r.sharp_norms) {
    complete = complete && s.has_value();
    if (s) total += *s;
  }
  r.ratios.emplace_back("n_sequence/n_exact", quotient(r.n_sequence, r.n_exact));
  r.ratios.emplace_back("extension_seminorm/n_exact", quotient(r.extension_seminorm, r.n_exact));
  r.ratios.emplace_back("extension_seminorm/n_sequence",
                        quotient(r.extension_seminorm, r.n_sequence));
  r.ratios.emplace_back("extension_seminorm/sharp_m_global_norm",
                        quotient(r.extension_seminorm, r.sharp_m_global_norm));
  r.ratios.emplace_back("nw_sequence/nw_exact", quotient(r.nw_sequence, r.nw_exact));
  r.ratios.emplace_back("extension_wnorm/nw_exact", quotient(r.extension_wnorm, r.nw_exact));
  r.ratios.emplace_back("extension_wnorm/nw_sequence", quotient(r.extension_wnorm, r.nw_sequence));
  r.ratios.emplace_back("extension_wnorm/sharp_sum", complete ? quotient(r.extension_wnorm, total)
                                                              : std::nullopt);
  return r;
}

}  // namespace sobtrace
