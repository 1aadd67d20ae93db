#include "pllid/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "pllid/error.hpp"

namespace pllid {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

bool parse_field(std::string_view field, double& out) {
  if (field == "nan") {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  if (field == "inf") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  if (field == "-inf") {
    out = -std::numeric_limits<double>::infinity();
    return true;
  }
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size() && !field.empty();
}

}  // namespace

const std::vector<double>& CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw ParseError("CSV has no column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text, const std::string& origin) {
  CsvTable table;
  std::size_t row = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++row;
    if (row == 1) {
      if (line.empty()) throw ParseError(origin + ": row 1: missing header");
      for (auto f : split(line)) table.header.emplace_back(f);
      table.columns.resize(table.header.size());
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw ParseError(origin + ": row " + std::to_string(row) + ": expected " + std::to_string(table.header.size()) +
                       " fields, got " + std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      double v = 0.0;
      if (!parse_field(fields[i], v)) {
        throw ParseError(origin + ": row " + std::to_string(row) + ": field '" + table.header[i] +
                         "' is not a number: '" + std::string(fields[i]) + "'");
      }
      table.columns[i].push_back(v);
    }
  }
  if (table.header.empty()) throw ParseError(origin + ": empty file");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), path.string());
}

TimeSeries uniform_series(const std::vector<double>& t, const std::vector<double>& values, const std::string& origin,
                          double jitter_tolerance) {
  const std::size_t n = t.size();
  if (n < 2 || values.size() != n) throw ParseError(origin + ": need at least two samples");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(values[i])) {
      throw ParseError(origin + ": row " + std::to_string(i + 2) + ": non-finite value");
    }
  }
  const double dt = (t[n - 1] - t[0]) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw ParseError(origin + ": time column must increase");
  double worst = 0.0;
  std::size_t worst_row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double offset = std::abs(t[i] - (t[0] + static_cast<double>(i) * dt)) / dt;
    if (offset > worst) {
      worst = offset;
      worst_row = i + 2;
    }
  }
  if (worst > jitter_tolerance) {
    std::ostringstream msg;
    msg << origin << ": row " << worst_row << ": non-uniform sampling (offset " << worst << " of a step)";
    throw ParseError(msg.str());
  }
  return {t[0], dt, values};
}

TimeSeries read_series_csv(const std::filesystem::path& path, std::string_view column, double jitter_tolerance) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 2 || table.header[0] != "t") {
    throw ParseError(path.string() + ": expected a header starting with 't'");
  }
  const std::vector<double>* values = nullptr;
  if (column.empty()) {
    if (table.header.size() != 2) {
      throw ParseError(path.string() + ": several value columns; select one by name");
    }
    values = &table.columns[1];
  } else {
    values = &table.column(column);
  }
  return uniform_series(table.columns[0], *values, path.string(), jitter_tolerance);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

std::string format_csv(std::span<const std::string> header, std::span<const std::vector<double>> columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("header and column counts differ");
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("CSV columns differ in length");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += format_double(columns[i][r]);
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ParseError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ParseError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

void write_csv(const std::filesystem::path& path, std::span<const std::string> header,
               std::span<const std::vector<double>> columns) {
  write_file_atomic(path, format_csv(header, columns));
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series, const std::string& value_name) {
  std::vector<double> t(series.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = series.time(i);
  const std::vector<std::string> header{"t", value_name};
  const std::vector<std::vector<double>> cols{std::move(t), series.values};
  write_csv(path, header, cols);
}

}  // namespace pllid
