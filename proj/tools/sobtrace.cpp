#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "csv_io.hpp"

int main(int argc, char** argv) {
  using sobtrace::cli::RunConfig;
  RunConfig config;
  std::string p_text = "2";

  CLI::App app{"Sobolev trace norms and Whitney extensions of 1-D data"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "CSV file with header x,f");
    sub->add_option("--m", config.m, "smoothness order (1..8)");
    sub->add_option("--p", p_text, "exponent > 1 or 'inf'");
    sub->add_option("--mode", config.mode, "extension operator: lmp or wmp");
    sub->add_option("--samples", config.samples, "uniform sample count for extend");
    sub->add_option("--seed", config.seed, "base seed for verify");
    sub->add_option("--out", config.out, "write output here instead of stdout");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "trace functionals as a JSON report");
  CLI::App* extend = app.add_subcommand("extend", "sample the extension and its derivatives as CSV");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite on seeded instances");
  CLI::App* euler = app.add_subcommand("euler", "table of finiteness constants");
  for (CLI::App* sub : {analyze, extend, verify, euler}) add_common(sub);
  verify->add_option("--instances", config.instances, "instances per (m, p) cell");
  verify->add_flag("--negative-control", config.negative_control,
                   "corrupt every extension; the run must then fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sobtrace::cli::kExitInputError;
  }

  for (CLI::App* sub : {analyze, extend, verify, euler}) {
    if (sub->parsed()) {
      config.command = sub->get_name();
      config.m_given = sub->count("--m") > 0;
    }
  }
  const auto p = sobtrace::cli::parse_exponent(p_text);
  if (!p) {
    std::cerr << "sobtrace: input error: --p must be a number > 1 or 'inf', got '" << p_text << "'\n";
    return sobtrace::cli::kExitInputError;
  }
  config.p = *p;
  try {
    if (const auto tol = sobtrace::cli::tolerance_from_env()) config.tol = *tol;
  } catch (const sobtrace::cli::InputError& e) {
    std::cerr << "sobtrace: input error: " << e.what() << '\n';
    return sobtrace::cli::kExitInputError;
  }
  return sobtrace::cli::run(config, std::cout, std::cerr);
}
