#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eqstop::csv {

// General format with 12 significant digits and a '.' decimal
// point regardless of locale. Infinities print as inf / -inf.
std::string format_number(double v);

using Cell = std::variant<double, long long, std::string>;

class Writer {
 public:
  Writer(std::ostream& os, std::vector<std::string> header);

  void row(std::initializer_list<Cell> cells);
  void row(const std::vector<Cell>& cells);

 private:
  void write_cell(const Cell& c);

  std::ostream& os_;
  std::size_t columns_;
};

}  // namespace eqstop::csv
