#include "csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string_view>

namespace sobtrace::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view text, std::size_t line, const char* name) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(line, std::string("cannot parse ") + name + " value '" + std::string(text) + "'");
  }
  if (!std::isfinite(v)) throw InputError(line, std::string(name) + " is not finite");
  return v;
}

}  // namespace

SampleSet read_samples(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::size_t> lines;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view row = raw;
    if (line == 1 && row.starts_with("\xEF\xBB\xBF")) row.remove_prefix(3);
    row = trim(row);
    if (row.empty()) continue;
    if (!header_seen) {
      const auto comma = row.find(',');
      if (comma == std::string_view::npos || trim(row.substr(0, comma)) != "x" ||
          trim(row.substr(comma + 1)) != "f") {
        throw InputError(line, "expected header 'x,f'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw InputError(line, "expected exactly two fields");
    }
    xs.push_back(parse_field(row.substr(0, comma), line, "x"));
    ys.push_back(parse_field(row.substr(comma + 1), line, "f"));
    lines.push_back(line);
  }
  if (!header_seen) throw InputError(0, "empty input: expected header 'x,f'");
  if (xs.empty()) throw InputError(0, "no data rows");

  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> sx;
  std::vector<double> sy;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && xs[order[k]] == xs[order[k - 1]]) {
      const std::size_t later = std::max(lines[order[k]], lines[order[k - 1]]);
      throw InputError(later, "duplicate x value " + format_double(xs[order[k]]));
    }
    sx.push_back(xs[order[k]]);
    sy.push_back(ys[order[k]]);
  }
  return SampleSet(std::move(sx), std::move(sy));
}

SampleSet read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(0, "cannot open input file '" + path + "'");
  return read_samples(in);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv_row(std::ostream& out, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << format_double(row[i]);
  }
  out << '\n';
}

}  // namespace sobtrace::cli
