#include "eqstop/csv.hpp"

#include <charconv>
#include <cmath>

#include "eqstop/error.hpp"

namespace eqstop::csv {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

Writer::Writer(std::ostream& os, std::vector<std::string> header) : os_(os), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os_ << ',';
    os_ << header[i];
  }
  os_ << '\n';
}

void Writer::write_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    os_ << format_number(*d);
  } else if (const long long* n = std::get_if<long long>(&c)) {
    os_ << *n;
  } else {
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) {
      os_ << s;
      return;
    }
    os_ << '"';
    for (char ch : s) {
      if (ch == '"') os_ << '"';
      os_ << ch;
    }
    os_ << '"';
  }
}

void Writer::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) fail(ErrorCode::InvalidArgument, "csv row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    write_cell(cells[i]);
  }
  os_ << '\n';
}

void Writer::row(std::initializer_list<Cell> cells) { row(std::vector<Cell>(cells)); }

}  // namespace eqstop::csv
