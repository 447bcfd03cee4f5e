#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "csv_io.hpp"
#include "instances.hpp"
#include "sobtrace/errors.hpp"
#include "sobtrace/extend_lmp.hpp"
#include "sobtrace/extend_wmp.hpp"
#include "sobtrace/finiteness.hpp"
#include "sobtrace/whitfield.hpp"

namespace sobtrace::cli {

using nlohmann::ordered_json;

namespace {

ordered_json number_or_null(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json exponent_json(double p) { return std::isinf(p) ? ordered_json("inf") : ordered_json(p); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

double data_scale(const SampleSet& data) {
  double s = 1.0;
  for (double y : data.ys()) s = std::max(s, std::abs(y));
  return s;
}

SampleSet with_values(const SampleSet& data, std::vector<double> ys) {
  return SampleSet(std::vector<double>(data.xs().begin(), data.xs().end()), std::move(ys));
}

// ------------------------------------------------------------- verify

struct Tally {
  std::size_t passed = 0;
  std::size_t total = 0;
  double worst = 0.0;  // largest lhs/rhs (inequalities) or residual
};

class Ledger {
 public:
  explicit Ledger(double tol) : tol_(tol) {}

  // lhs <= rhs up to a relative slack.
  void at_most(const std::string& name, double lhs, double rhs) {
    Tally& t = tallies_[name];
    ++t.total;
    const bool ok = std::isfinite(lhs) && lhs <= rhs + tol_ * std::max(1.0, std::abs(rhs));
    if (ok) ++t.passed;
    const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInf : 0.0);
    t.worst = std::max(t.worst, ratio);
  }

  void residual(const std::string& name, double value, double limit) {
    Tally& t = tallies_[name];
    ++t.total;
    if (value <= limit) ++t.passed;
    t.worst = std::max(t.worst, value);
  }

  void failure(const std::string& name) {
    Tally& t = tallies_[name];
    ++t.total;
    t.worst = kInf;
  }

  bool all_passed() const {
    return std::all_of(tallies_.begin(), tallies_.end(),
                       [](const auto& kv) { return kv.second.passed == kv.second.total; });
  }

  const std::map<std::string, Tally>& tallies() const { return tallies_; }
  double tol() const { return tol_; }

 private:
  double tol_;
  std::map<std::string, Tally> tallies_;
};

struct CellRatios {
  double lmp_max = 0.0;
  double lmp_min = kInf;
  double wmp_max = 0.0;
  double wmp_min = kInf;
};

void corrupt(PiecewiseExtension& ext) {
  if (ext.gap_polys.empty()) return;
  Poly& q = ext.gap_polys.front();
  q.coeffs[0] += 1e-3 * (1.0 + std::abs(q.coeffs[0]));
}

// Superposition defect per derivative order, relative to the sup over the
// probes of |F_a^{(k)}| + |lambda F_b^{(k)}|.
double linearity_residual(const PiecewiseExtension& fa, const PiecewiseExtension& fb,
                          const PiecewiseExtension& fab, double lambda,
                          const std::vector<double>& probes, int m) {
  double worst = 0.0;
  for (int k = 0; k <= m; ++k) {
    double defect = 0.0;
    double scale = 0.0;
    for (double x : probes) {
      const double a = extension_eval(fa, x, k);
      const double b = extension_eval(fb, x, k);
      const double ab = extension_eval(fab, x, k);
      defect = std::max(defect, std::abs(ab - a - lambda * b));
      scale = std::max(scale, std::abs(a) + std::abs(lambda * b));
    }
    worst = std::max(worst, defect / std::max(scale, 1e-300));
  }
  return worst;
}

void verify_instance(Ledger& ledger, CellRatios& ratios, int m, double p, std::uint64_t seed,
                     bool negative_control) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(static_cast<std::size_t>(m) + 1, 10);
  const SampleSet data = random_instance(rng, size_dist(rng));
  const double scale = data_scale(data);

  const WhitneyField field = build_field(data, m);
  PiecewiseExtension ext = assemble_extension(field);
  if (negative_control) corrupt(ext);

  double interp = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double left = i == 0 ? ext.left_tail(data.x(i)) : ext.gap_polys[i - 1](data.x(i));
    interp = std::max(interp, std::abs(left - data.y(i)));
    interp = std::max(interp, std::abs(extension_eval(ext, data.x(i), 0) - data.y(i)));
  }
  ledger.residual("knot_interpolation", interp / scale, 1e-12);
  ledger.residual("smoothness_c_m_minus_1", smoothness_report(ext), ledger.tol());

  const double seminorm = lmp_seminorm(ext, p);
  const double n_exact = n_variational_exact(data, m, p);
  const double n_seq = n_sequence(data, m, p);
  ledger.at_most("n_sequence_le_n_exact", n_seq, n_exact);
  ledger.at_most("sequence_bound_(2m+2)m^(p-1)", std::pow(n_exact, p),
                 (2.0 * m + 2.0) * std::pow(m, p - 1.0) * std::pow(n_seq, p));
  ledger.at_most("necessity_constant_2", n_exact, 2.0 * seminorm);
  ledger.at_most("jet_necessity_constant_e", jet_variational_exact(field, p),
                 std::numbers::e * seminorm);
  ledger.residual("n_infty_consecutive_windows",
                  std::abs(n_infty(data, m) - n_infty_all_subsets(data, m)) /
                      std::max(1.0, n_infty_all_subsets(data, m)),
                  ledger.tol());
  if (n_exact > 0.0) {
    ratios.lmp_max = std::max(ratios.lmp_max, seminorm / n_exact);
    ratios.lmp_min = std::min(ratios.lmp_min, seminorm / n_exact);
  }

  if (data.size() <= kNWEnumerationGuard) {
    const double nw_exact = nw_variational_exact(data, m, p);
    ledger.at_most("nw_sequence_le_nw_exact", nw_sequence(data, m, p), nw_exact);
    const double wnorm = wmp_norm(wmp_extend(data, m, p), p);
    if (nw_exact > 0.0) {
      ratios.wmp_max = std::max(ratios.wmp_max, wnorm / nw_exact);
      ratios.wmp_min = std::min(ratios.wmp_min, wnorm / nw_exact);
    }
  }

  std::uniform_real_distribution<double> probe(data.x(0) - 3.0, data.x(data.size() - 1) + 3.0);
  for (int s = 0; s < 20; ++s) {
    const double x = probe(rng);
    const double sharp = sharp_m_global_eval(data, m, x);
    const double weighted = weighted_sharp_eval(data, m, x);
    ledger.at_most("sharp_sandwich_lower_1", sharp, weighted);
    ledger.at_most("sharp_sandwich_upper_2", weighted, 2.0 * sharp);
  }

  InstanceShape spread;
  spread.long_gap_prob = 0.3;
  const SampleSet sparse = random_instance(rng, size_dist(rng), spread);
  const PiecewiseExtension wext = wmp_extend(sparse, m, p);
  ledger.at_most("wmp_support_radius_le_3(m+2)", support_radius(wext, sparse), support_bound(m));

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> g;
  std::vector<double> fg;
  const double lambda = gauss(rng);
  for (std::size_t i = 0; i < data.size(); ++i) {
    g.push_back(gauss(rng));
    fg.push_back(data.y(i) + lambda * g.back());
  }
  std::vector<double> probes(data.xs().begin(), data.xs().end());
  for (std::size_t i = 0; i + 1 < data.size(); ++i) probes.push_back(0.5 * (data.x(i) + data.x(i + 1)));
  probes.push_back(data.x(0) - 1.5);
  probes.push_back(data.x(data.size() - 1) + 1.5);
  const SampleSet gd = with_values(data, g);
  const SampleSet fgd = with_values(data, fg);
  ledger.residual("linearity_lmp",
                  linearity_residual(ext, assemble_extension(build_field(gd, m)),
                                     assemble_extension(build_field(fgd, m)), lambda, probes, m),
                  ledger.tol());
  ledger.residual("linearity_wmp",
                  linearity_residual(wmp_extend(data, m, p), wmp_extend(gd, m, p),
                                     wmp_extend(fgd, m, p), lambda, probes, m),
                  ledger.tol());

  // Subsequence inequality: random k and a random subsequence through both ends.
  const std::size_t n = data.size();
  std::uniform_int_distribution<std::size_t> k_dist(1, n - 1);
  const std::size_t k = k_dist(rng);
  std::vector<std::size_t> inner(n - 2);
  for (std::size_t i = 0; i < inner.size(); ++i) inner[i] = i + 1;
  std::shuffle(inner.begin(), inner.end(), rng);
  std::vector<std::size_t> sub{0};
  sub.insert(sub.end(), inner.begin(), inner.begin() + static_cast<std::ptrdiff_t>(k - 1));
  sub.push_back(n - 1);
  std::sort(sub.begin(), sub.end());
  const auto sides = subsequence_inequality_check(data, static_cast<int>(k), p, sub);
  ledger.at_most("subsequence_inequality", sides.lhs, sides.rhs);
}

}  // namespace

std::optional<double> parse_exponent(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (used != text.size() || !(v > 1.0)) return std::nullopt;
  return v;
}

std::optional<double> tolerance_from_env() {
  const char* raw = std::getenv("SOBTRACE_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string text(raw);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw InputError(0, "SOBTRACE_TOL must be a positive number, got '" + text + "'");
  }
  return v;
}

void validate_config(const RunConfig& config) {
  if (config.m < 1 || config.m > 8) throw InputError(0, "--m must lie in [1, 8]");
  if (!(config.p > 1.0)) throw InputError(0, "--p must be > 1 or 'inf'");
  if (config.samples < 2) throw InputError(0, "--samples must be at least 2");
  if (config.mode != "lmp" && config.mode != "wmp") throw InputError(0, "--mode must be lmp or wmp");
  if (config.command == "euler" && config.m > 6) throw InputError(0, "euler tabulates m <= 6");
  if ((config.command == "analyze" || config.command == "extend") && config.input.empty()) {
    throw InputError(0, "--input is required");
  }
}

ordered_json report_to_json(const TraceReport& r) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "analyze";
  j["m"] = r.m;
  j["p"] = exponent_json(r.p);
  j["points"] = r.points;
  ordered_json f;
  f["n_exact"] = number_or_null(r.n_exact);
  f["n_sequence"] = number_or_null(r.n_sequence);
  f["n_infty"] = number_or_null(r.n_infty);
  f["nw_exact"] = number_or_null(r.nw_exact);
  f["nw_sequence"] = number_or_null(r.nw_sequence);
  ordered_json sharp = ordered_json::array();
  for (const auto& s : r.sharp_norms) sharp.push_back(number_or_null(s));
  f["sharp_norms"] = sharp;
  f["sharp_m_global_norm"] = number_or_null(r.sharp_m_global_norm);
  f["extension_seminorm"] = number_or_null(r.extension_seminorm);
  f["extension_wnorm"] = number_or_null(r.extension_wnorm);
  j["functionals"] = f;
  ordered_json ratios = ordered_json::object();
  for (const auto& [name, v] : r.ratios) ratios[name] = number_or_null(v);
  j["ratios"] = ratios;
  ordered_json reasons = ordered_json::object();
  for (const auto& [name, why] : r.null_reasons) reasons[name] = why;
  j["null_reasons"] = reasons;
  return j;
}

int cmd_analyze(const RunConfig& config, std::ostream& out) {
  const SampleSet data = read_samples_file(config.input);
  out << report_to_json(compute_trace_report(data, config.m, config.p)).dump(2) << '\n';
  return kExitOk;
}

int cmd_extend(const RunConfig& config, std::ostream& out) {
  const SampleSet data = read_samples_file(config.input);
  PiecewiseExtension ext;
  if (config.mode == "wmp") {
    if (std::isinf(config.p)) throw InputError(0, "wmp mode needs a finite --p");
    ext = wmp_extend(data, config.m, config.p);
  } else {
    ext = assemble_extension(build_field(data, config.m));
  }
  // A little past the W^m_p support bound so the zero region shows up.
  const double delta = support_bound(config.m) + 2.0;
  const double lo = data.x(0) - delta;
  const double hi = data.x(data.size() - 1) + delta;
  std::vector<double> xs;
  for (std::size_t i = 0; i < config.samples; ++i) {
    xs.push_back(i + 1 == config.samples
                     ? hi
                     : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(config.samples - 1));
  }
  for (double b : ext.breaks) {
    if (b >= lo && b <= hi) xs.push_back(b);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  out << "x";
  for (int k = 0; k <= config.m; ++k) out << ",F" << k;
  out << '\n';
  std::vector<double> row;
  for (double x : xs) {
    row.assign(1, x);
    for (int k = 0; k <= config.m; ++k) row.push_back(extension_eval(ext, x, k));
    write_csv_row(out, row);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  Ledger ledger(config.tol);
  const double exponents[] = {1.5, 2.0, 4.0};
  std::ostringstream cells;
  for (int m = 1; m <= 4; ++m) {
    for (std::size_t pi = 0; pi < std::size(exponents); ++pi) {
      const double p = exponents[pi];
      CellRatios ratios;
      for (std::size_t i = 0; i < config.instances; ++i) {
        const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(m), pi, i);
        try {
          verify_instance(ledger, ratios, m, p, seed, config.negative_control);
        } catch (const std::exception&) {
          ledger.failure("instance_completed_without_error");
        }
      }
      cells << "cell m=" << m << " p=" << format_double(p) << "  lmp ||F||/N in ["
            << sci(ratios.lmp_min) << ", " << sci(ratios.lmp_max) << "]  wmp ||F||/NW in ["
            << sci(ratios.wmp_min) << ", " << sci(ratios.wmp_max) << "]\n";
    }
  }
  out << "sobtrace verify seed=" << config.seed << " instances_per_cell=" << config.instances
      << " tol=" << sci(config.tol) << (config.negative_control ? " negative_control=on" : "")
      << '\n';
  char line[160];
  std::snprintf(line, sizeof line, "%-36s %8s %8s  %s\n", "invariant", "passed", "total", "worst");
  out << line;
  for (const auto& [name, t] : ledger.tallies()) {
    std::snprintf(line, sizeof line, "%-36s %8zu %8zu  %s\n", name.c_str(), t.passed, t.total,
                  sci(t.worst).c_str());
    out << line;
  }
  out << "empirical equivalence ratios (recorded, not asserted):\n" << cells.str();
  const bool ok = ledger.all_passed();
  out << "result: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_euler(const RunConfig& config, std::ostream& out) {
  const int top = config.m_given ? config.m : 6;
  ordered_json rows = ordered_json::array();
  for (int m = 1; m <= top; ++m) {
    const double c = favard_cm(m);
    const double big_c = deboor_Cm(m);
    const double lower = std::pow(std::numbers::pi / 2.0, m - 1);
    const double upper = (m - 1) * std::pow(9.0, m);
    const KmExperiment experiment = km_lower_experiment(m, 2 * m + 8);
    const EulerSpline spline = euler_spline(m);
    ordered_json row;
    row["m"] = m;
    row["c_m"] = c;
    row["C_m"] = big_c;
    row["pi_half_pow_m_minus_1"] = lower;
    row["m_minus_1_times_9_pow_m"] = upper;
    row["chain_holds"] = m >= 2 ? ordered_json(lower < c && c <= big_c && big_c < upper)
                                : ordered_json(nullptr);
    row["K_m"] = m == 2 ? ordered_json(2.0) : ordered_json(nullptr);
    row["c_m_le_K_m"] = m == 2 ? ordered_json(c <= 2.0 + 1e-12) : ordered_json(nullptr);
    row["euler_mth_derivative_sup"] = spline.mth_derivative_sup();
    row["c_m_times_2_pow_m"] = c * std::ldexp(1.0, m);
    row["experiment_n"] = 2 * m + 8;
    row["experiment_ratio"] = experiment.ratio;
    rows.push_back(row);
  }
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "euler";
  j["note"] = "experiment_ratio is ||F^(m)||_inf / (m! N_inf) for Whitney's F on alternating data; "
              "an upper bound for the trace-norm ratio, not K(m)";
  j["rows"] = rows;
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_config(config);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.out.empty()) {
      file.open(config.out);
      if (!file) throw InputError(0, "cannot open output file '" + config.out + "'");
      sink = &file;
    }
    if (config.command == "analyze") return cmd_analyze(config, *sink);
    if (config.command == "extend") return cmd_extend(config, *sink);
    if (config.command == "verify") return cmd_verify(config, *sink);
    if (config.command == "euler") return cmd_euler(config, *sink);
    throw InputError(0, "unknown command '" + config.command + "'");
  } catch (const InputError& e) {
    err << "sobtrace: input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Error& e) {
    err << "sobtrace: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace sobtrace::cli
