#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sobtrace/polycore.hpp"

namespace sobtrace::cli {

/// Malformed input; `line` is 1-based and counts the header (0 = whole file).
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads "x,f" CSV. Rows may come in any order and are sorted on load;
/// non-finite entries and repeated abscissae are rejected.
SampleSet read_samples(std::istream& in);
SampleSet read_samples_file(const std::string& path);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

void write_csv_row(std::ostream& out, const std::vector<double>& row);

}  // namespace sobtrace::cli
