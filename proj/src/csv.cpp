#include "trendlens/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <optional>

namespace trendlens {

namespace {

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && issp(s[b])) ++b;
  return s.substr(b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(trim(line.substr(begin, i - begin)));
      begin = i + 1;
    }
  }
  return out;
}

double parse_number(const std::string& s, const char* what,
                    std::size_t line_no) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(std::string("malformed ") + what + " value '" + s + "'",
                     line_no);
  return value;
}

}  // namespace

CsvResult parse_csv_stream(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError(name + ": empty input", 1);
  ++line_no;

  std::vector<std::string> header = split_fields(line);
  std::optional<std::size_t> col_date, col_close, col_adj, col_volume;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string h = lower(header[i]);
    if (h == "date") col_date = i;
    else if (h == "close") col_close = i;
    else if (h == "adj close" || h == "adj_close" || h == "adjclose") col_adj = i;
    else if (h == "volume") col_volume = i;
  }
  if (!col_date) throw ParseError(name + ": header has no Date column", 1);
  if (!col_adj && !col_close)
    throw ParseError(name + ": header has neither Adj Close nor Close", 1);

  bool used_adj = bool(col_adj);
  std::vector<std::string> warnings;
  if (!col_adj) warnings.push_back("no Adj Close column; using Close");
  if (!col_volume) warnings.push_back("no Volume column; volumes set to 0");

  struct Row {
    Date date;
    double close;
    double volume;
    std::size_t line_no;
  };
  std::vector<Row> rows;

  const std::size_t price_col = col_adj ? *col_adj : *col_close;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> f = split_fields(line);
    std::size_t need = std::max(price_col, *col_date);
    if (col_volume) need = std::max(need, *col_volume);
    if (f.size() <= need)
      throw ParseError(name + ": too few columns", line_no);

    Row row;
    try {
      row.date = Date::parse(f[*col_date]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(name + ": " + e.what(), line_no);
    }
    row.close = parse_number(f[price_col], "price", line_no);
    if (!(row.close > 0.0))
      throw ParseError(name + ": non-positive price " + f[price_col], line_no);
    row.volume = col_volume ? parse_number(f[*col_volume], "volume", line_no) : 0.0;
    if (row.volume < 0.0)
      throw ParseError(name + ": negative volume", line_no);
    row.line_no = line_no;
    rows.push_back(row);
  }

  if (rows.empty()) throw ParseError(name + ": empty input", line_no);

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].date == rows[i - 1].date)
      throw ParseError(name + ": duplicate date " + rows[i].date.iso(),
                       rows[i].line_no);

  std::vector<Date> dates;
  std::vector<double> close, volume;
  dates.reserve(rows.size());
  close.reserve(rows.size());
  volume.reserve(rows.size());
  for (const Row& r : rows) {
    dates.push_back(r.date);
    close.push_back(r.close);
    volume.push_back(r.volume);
  }
  return CsvResult{
      PriceSeries(std::move(dates), std::move(close), std::move(volume)),
      used_adj, std::move(warnings)};
}

CsvResult parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_csv_stream(in, path);
}

}  // namespace trendlens
