#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pllid/time_series.hpp"

namespace pllid {

inline constexpr double kDefaultJitterTolerance = 1e-6;

/// Numeric table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws ParseError when the column is missing.
  const std::vector<double>& column(std::string_view name) const;
};

/// Errors name the 1-based file row (the header is row 1).
CsvTable parse_csv(std::string_view text, const std::string& origin);
CsvTable read_csv(const std::filesystem::path& path);

/// Builds a uniform series from a time column, rejecting samples whose offset
/// from the uniform grid exceeds `jitter_tolerance * dt` (the message names the
/// worst row).
TimeSeries uniform_series(const std::vector<double>& t, const std::vector<double>& values,
                          const std::string& origin, double jitter_tolerance = kDefaultJitterTolerance);

/// Reads `t,<value>`; with several value columns `column` picks one by name.
TimeSeries read_series_csv(const std::filesystem::path& path, std::string_view column = {},
                           double jitter_tolerance = kDefaultJitterTolerance);

/// 17 significant digits; "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double x);

std::string format_csv(std::span<const std::string> header, std::span<const std::vector<double>> columns);

/// Writes to `<path>.tmp` and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

void write_csv(const std::filesystem::path& path, std::span<const std::string> header,
               std::span<const std::vector<double>> columns);

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series,
                      const std::string& value_name = "value");

}  // namespace pllid
