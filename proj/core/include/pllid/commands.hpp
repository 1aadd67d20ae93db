#pragma once

#include <cstddef>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pllid/config.hpp"
#include "pllid/deltas.hpp"
#include "pllid/model.hpp"
#include "pllid/report.hpp"
#include "pllid/shift_scan.hpp"

namespace pllid {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitNumerical = 3,
  kExitDegenerate = 4,
};

/// Maps an exception raised by a command to its process exit code.
int exit_code_for(std::exception_ptr error) noexcept;

struct SimulateCommand {
  std::filesystem::path config;
  std::filesystem::path out;
  double dt = 1e-3;
  std::size_t steps = 100000;
  std::optional<std::size_t> transient;  // default: 20% of steps
  std::size_t sample_every = 1;
  ModelState init = kDefaultInitialState;
};

/// Writes `t,phi,y,z` in model time. Returns the number of data rows.
std::size_t cmd_simulate(const SimulateCommand& cmd);

struct ExpectedRow {
  std::string regime;
  DimensionlessParams params;
  AlphaPair alpha;

  double neg_beta0() const { return -alpha.alpha1; }
  double beta1() const { return alpha.alpha0; }
};

std::vector<ExpectedRow> cmd_expected(const std::filesystem::path& bundle);

/// Human-readable table (regime, T_renorm, eps1, eps2, gamma, -beta0, beta1*1e3).
std::string format_expected_table(const std::vector<ExpectedRow>& rows);

void write_expected_csv(const std::filesystem::path& path, const std::vector<ExpectedRow>& rows);

enum class TimeScale {
  Laboratory,  // series time in seconds, multiplied by T_renorm
  Model,       // series already in dimensionless time
};

struct PreprocessOptions {
  /// Normalized cutoff; empty selects the default, 0 disables smoothing.
  std::optional<double> cutoff;
  TimeScale time_scale = TimeScale::Laboratory;
};

/// One tenth of the XOR parasite frequency (f_rg/m + f_0/n) in cycles per
/// sample; empty when that is not below Nyquist.
std::optional<double> default_cutoff(const PhysicalSetup& setup, double dt_seconds);

struct GridOptions {
  std::optional<double> b_min;
  std::optional<double> b_max;
  std::optional<double> step;
  std::size_t points = 200;
};

struct FitCommand {
  std::filesystem::path series;
  std::string column;
  std::filesystem::path config;
  std::filesystem::path out;                    // JSON report
  std::optional<std::filesystem::path> f4_out;  // default: <out stem>_f4.csv
  std::optional<double> b_trial;                // empty: scan for the shift
  int k_order = 1;
  FitMethod method = FitMethod::Integrated;
  std::optional<double> y_floor;
  PreprocessOptions preprocess;
  GridOptions grid;
  double drop_factor = 100.0;
  unsigned threads = 0;
  std::string command_line;
};

Report cmd_fit(const FitCommand& cmd);

struct ScanCommand {
  std::filesystem::path series;
  std::string column;
  std::filesystem::path config;
  std::filesystem::path out;                         // curve CSV
  std::optional<std::filesystem::path> summary_out;  // default: <out stem>.json
  int k_order = 1;
  PreprocessOptions preprocess;
  GridOptions grid;
  double drop_factor = 100.0;
  unsigned threads = 0;
  std::string command_line;
};

ScanResult cmd_scan(const ScanCommand& cmd);

struct SpikesCommand {
  std::filesystem::path series;
  std::string column;
  std::optional<double> threshold;
  std::optional<double> burst_gap;
  std::optional<std::filesystem::path> out;
};

std::vector<std::size_t> cmd_spikes(const SpikesCommand& cmd);

/// Scan curve CSV: b_trial,L,abs_beta1,beta0,monotonic.
void write_scan_csv(const std::filesystem::path& path, const ScanResult& result);

}  // namespace pllid
