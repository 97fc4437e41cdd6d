#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trendlens/series.hpp"

namespace trendlens {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line_no)
      : std::runtime_error(message + " (line " + std::to_string(line_no) + ")"),
        line_no_(line_no) {}

  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

struct CsvResult {
  PriceSeries series;
  bool used_adj_close = true;  // false: fell back to the Close column
  std::vector<std::string> warnings;
};

/// Reads a daily history CSV with header
///   Date,Open,High,Low,Close,Adj Close,Volume
/// Uses Adj Close as the price (Close when the column is missing, with a
/// warning), sorts rows by date, rejects duplicate dates and non-positive
/// prices. Throws ParseError with the offending line number.
CsvResult parse_csv(const std::string& path);
CsvResult parse_csv_stream(std::istream& in, const std::string& name);

}  // namespace trendlens
