//
// Copyright 2026 The dpgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPGAUSS_FORMAT_H_
#define DPGAUSS_FORMAT_H_

#include <charconv>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// Locale-independent number formatting and the tabular CSV writer used by
// the CLI.

namespace dpgauss {

// Shortest correctly rounded decimal form of x at `precision` significant
// digits ('.' decimal point, trailing zeros trimmed).  The printed string
// re-parses to within one unit in the last printed digit.  precision >= 17
// switches to the exact shortest round-trip form.
inline std::string format_double(double x, int precision = 12) {
  if (precision < 1) {
    throw std::domain_error("format_double: precision must be >= 1");
  }
  char buf[64];
  std::to_chars_result res =
      precision >= 17
          ? std::to_chars(buf, buf + sizeof(buf), x)
          : std::to_chars(buf, buf + sizeof(buf), x,
                          std::chars_format::general, precision);
  if (res.ec != std::errc()) {
    throw std::logic_error("format_double: buffer too small");
  }
  return std::string(buf, res.ptr);
}

// One CSV cell: a number formatted at the table's precision, or verbatim
// text (method names, flags).
using TableCell = std::variant<double, std::string>;

// Rows of cells under a fixed header, serialized as comma/LF CSV with '.'
// decimal points.
struct OutputTable {
  std::vector<std::string> header;
  std::vector<std::vector<TableCell>> rows;
  int precision = 12;

  void add_row(std::vector<TableCell> row) {
    if (row.size() != header.size()) {
      throw std::logic_error("OutputTable: row arity must match header");
    }
    rows.push_back(std::move(row));
  }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i > 0) os << ',';
      os << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) os << ',';
        if (const double* num = std::get_if<double>(&row[i])) {
          os << format_double(*num, precision);
        } else {
          os << std::get<std::string>(row[i]);
        }
      }
      os << '\n';
    }
  }
};

}  // namespace dpgauss

#endif  // DPGAUSS_FORMAT_H_
