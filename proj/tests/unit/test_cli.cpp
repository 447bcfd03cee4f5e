#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "csv_io.hpp"
#include "instances.hpp"
#include "sobtrace/functionals.hpp"

using namespace sobtrace;
using namespace sobtrace::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("sobtrace_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& body) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::size_t error_line(const std::string& csv) {
  std::istringstream in(csv);
  try {
    read_samples(in);
  } catch (const InputError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(RunConfig config) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config_for(const std::string& command, const std::string& input, int m, double p) {
  RunConfig c;
  c.command = command;
  c.input = input;
  c.m = m;
  c.m_given = true;
  c.p = p;
  return c;
}

std::vector<std::vector<double>> parse_csv_rows(const std::string& text, std::string* header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("CSV ingestion") {
  std::istringstream ok("x,f\n2,4\n0,0\n\n1,1\n");
  const SampleSet d = read_samples(ok);
  REQUIRE(d.size() == 3);
  CHECK(d.x(0) == 0.0);
  CHECK(d.y(2) == 4.0);

  std::istringstream bom("\xEF\xBB\xBFx,f\n1e-3,-2.5\n");
  CHECK(read_samples(bom).y(0) == -2.5);

  CHECK(error_line("x,y\n0,1\n") == 1);
  CHECK(error_line("x,f\n0,1\n1,nan\n") == 3);
  CHECK(error_line("x,f\n0,1\n1,inf\n") == 3);
  CHECK(error_line("x,f\n0,1\n1,2,3\n") == 3);
  CHECK(error_line("x,f\n0,1\nabc,2\n") == 3);
  CHECK(error_line("x,f\n0,1\n1,2x\n") == 3);
  CHECK(error_line("x,f\n0,1\n2,2\n0,5\n") == 4);
  CHECK(error_line("") == 0);
  CHECK(error_line("x,f\n") == 0);

  for (double v : {0.1, -1e-300, 123456789.123, 1.0 / 3.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("exponent parsing and config validation") {
  CHECK(std::isinf(*parse_exponent("inf")));
  CHECK(*parse_exponent("2.5") == 2.5);
  CHECK(!parse_exponent("1"));
  CHECK(!parse_exponent("0.5"));
  CHECK(!parse_exponent("two"));

  RunConfig c = config_for("analyze", "", 2, 2.0);
  CHECK(invoke(c).code == kExitInputError);
  c.input = "/nonexistent/data.csv";
  const Outcome missing = invoke(c);
  CHECK(missing.code == kExitInputError);
  CHECK(!missing.err.empty());
  c.m = 9;
  CHECK(invoke(c).code == kExitInputError);
  RunConfig e = config_for("euler", "", 7, 2.0);
  CHECK(invoke(e).code == kExitInputError);
}

TEST_CASE("analyze") {
  TempDir dir;
  const std::string sq = dir.file("sq.csv", "x,f\n0,0\n1,1\n2,4\n");
  const Outcome r = invoke(config_for("analyze", sq, 2, 2.0));
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["p"] == 2.0);
  CHECK(j["functionals"]["n_sequence"].get<double>() == doctest::Approx(std::sqrt(2.0)));
  CHECK(j["functionals"]["n_exact"].get<double>() == doctest::Approx(std::sqrt(2.0)));

  const Outcome inf = invoke(config_for("analyze", sq, 2, kInf));
  REQUIRE(inf.code == kExitOk);
  const auto ji = nlohmann::json::parse(inf.out);
  CHECK(ji["p"] == "inf");
  CHECK(ji["functionals"]["extension_seminorm"].get<double>() == doctest::Approx(2.0));
  CHECK(ji["functionals"]["n_exact"].is_null());
  CHECK(ji["null_reasons"].contains("n_exact"));

  const std::string zero = dir.file("zero.csv", "x,f\n0,0\n0.5,0\n2,0\n3,0\n");
  const auto jz = nlohmann::json::parse(invoke(config_for("analyze", zero, 2, 2.0)).out);
  std::size_t checked = 0;
  for (const auto& [name, value] : jz["functionals"].items()) {
    INFO(name);
    const std::vector<double> values = value.is_array() ? value.get<std::vector<double>>()
                                                        : std::vector<double>{value.get<double>()};
    for (double v : values) CHECK(v == 0.0);
    ++checked;
  }
  CHECK(checked >= 8);

  const std::string dup = dir.file("dup.csv", "x,f\n0,0\n1,1\n0,2\n");
  const Outcome bad = invoke(config_for("analyze", dup, 2, 2.0));
  CHECK(bad.code == kExitInputError);
  CHECK(bad.err.find("line 4") != std::string::npos);

  // --out writes the same document to a file.
  RunConfig to_file = config_for("analyze", sq, 2, 2.0);
  to_file.out = dir.path("report.json");
  REQUIRE(invoke(to_file).code == kExitOk);
  std::ifstream written(to_file.out);
  std::stringstream body;
  body << written.rdbuf();
  CHECK(body.str() == r.out);
}

TEST_CASE("extend") {
  TempDir dir;
  const std::string path = dir.file("d.csv", "x,f\n0,1\n0.7,-2\n1.5,0.5\n3,2\n3.4,-1\n");
  for (int m : {1, 2, 3}) {
    RunConfig c = config_for("extend", path, m, 2.0);
    c.samples = 200;
    const Outcome r = invoke(c);
    REQUIRE(r.code == kExitOk);
    std::string header;
    const auto rows = parse_csv_rows(r.out, &header);
    std::string expect = "x";
    for (int k = 0; k <= m; ++k) expect += ",F" + std::to_string(k);
    CHECK(header == expect);
    const std::vector<std::pair<double, double>> knots{{0, 1}, {0.7, -2}, {1.5, 0.5}, {3, 2}, {3.4, -1}};
    std::size_t hits = 0;
    for (const auto& row : rows) {
      REQUIRE(row.size() == static_cast<std::size_t>(m) + 2);
      for (const auto& [x, f] : knots) {
        if (row[0] == x) {
          CHECK(row[1] == f);
          ++hits;
        }
      }
      if (row[0] < 0 || row[0] > 3.4) CHECK(row.back() == 0.0);
    }
    CHECK(hits == knots.size());

    c.mode = "wmp";
    const auto wrows = parse_csv_rows(invoke(c).out, nullptr);
    const double reach = 3.0 * (m + 2);
    std::size_t beyond = 0;
    for (const auto& row : wrows) {
      if (row[0] < -reach || row[0] > 3.4 + reach) {
        ++beyond;
        for (std::size_t k = 1; k < row.size(); ++k) CHECK(row[k] == 0.0);
      }
    }
    CHECK(beyond > 0);
  }

  RunConfig inf = config_for("extend", path, 2, kInf);
  inf.mode = "wmp";
  CHECK(invoke(inf).code == kExitInputError);
}

TEST_CASE("extend output round-trips through analyze") {
  TempDir dir;
  std::mt19937_64 rng(61);
  const SampleSet data = random_instance(rng, 7);
  std::ostringstream csv;
  csv << "x,f\n";
  for (std::size_t i = 0; i < data.size(); ++i) write_csv_row(csv, {data.x(i), data.y(i)});
  const std::string path = dir.file("orig.csv", csv.str());

  RunConfig ext = config_for("extend", path, 2, 2.0);
  ext.samples = 50;
  const auto rows = parse_csv_rows(invoke(ext).out, nullptr);
  std::ostringstream knots;
  knots << "x,f\n";
  for (const auto& row : rows) {
    for (double x : data.xs()) {
      if (row[0] == x) write_csv_row(knots, {row[0], row[1]});
    }
  }
  const std::string back = dir.file("back.csv", knots.str());
  const auto a = nlohmann::json::parse(invoke(config_for("analyze", path, 2, 2.0)).out);
  const auto b = nlohmann::json::parse(invoke(config_for("analyze", back, 2, 2.0)).out);
  for (const auto& [name, value] : a["functionals"].items()) {
    INFO(name);
    if (value.is_number()) CHECK(std::abs(value.get<double>() - b["functionals"][name].get<double>()) <=
                                 1e-9 * std::max(1.0, std::abs(value.get<double>())));
  }
}

TEST_CASE("verify is deterministic and the negative control fails") {
  RunConfig c = config_for("verify", "", 2, 2.0);
  c.instances = 2;
  c.seed = 7;
  const Outcome first = invoke(c);
  const Outcome second = invoke(c);
  CHECK(first.code == kExitOk);
  CHECK(first.out == second.out);
  CHECK(first.out.find("result: PASS") != std::string::npos);

  c.negative_control = true;
  const Outcome broken = invoke(c);
  CHECK(broken.code == kExitVerifyFailed);
  CHECK(broken.out.find("result: FAIL") != std::string::npos);
}

TEST_CASE("euler table") {
  const Outcome r = invoke(config_for("euler", "", 6, 2.0));
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  const auto& rows = j["rows"];
  REQUIRE(rows.size() == 6);
  CHECK(rows[0]["c_m"].get<double>() == doctest::Approx(1.0));
  CHECK(rows[0]["chain_holds"].is_null());
  CHECK(rows[1]["c_m_le_K_m"] == true);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i]["chain_holds"] == true);
  CHECK(rows[0]["experiment_ratio"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(42, 1, 2, 3) == derive_seed(42, 1, 2, 3));
  CHECK(derive_seed(42, 1, 2, 3) != derive_seed(42, 1, 2, 4));
  CHECK(derive_seed(42, 1, 2, 3) != derive_seed(43, 1, 2, 3));
  std::mt19937_64 a(5);
  std::mt19937_64 b(5);
  const SampleSet x = random_instance(a, 9);
  const SampleSet y = random_instance(b, 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(x.x(i) == y.x(i));
    CHECK(x.y(i) == y.y(i));
    if (i > 0) CHECK(x.x(i) - x.x(i - 1) >= 0.2 - 1e-12);
  }
}
