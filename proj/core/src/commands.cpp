#include "pllid/commands.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "pllid/csv.hpp"
#include "pllid/error.hpp"
#include "pllid/observation.hpp"
#include "pllid/smoothing.hpp"
#include "pllid/spikes.hpp"
#include "pllid/version.hpp"

namespace pllid {
namespace {

// Re-raises an exception with the pipeline stage prepended, keeping its type
// so the exit code mapping still applies.
template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  const std::string prefix = std::string(name) + ": ";
  try {
    return fn();
  } catch (const DivergenceError& e) {
    throw DivergenceError(e.step(), prefix + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(prefix + e.what());
  } catch (const DegenerateFitError& e) {
    throw DegenerateFitError(prefix + e.what());
  } catch (const ParseError& e) {
    throw ParseError(prefix + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(prefix + e.what());
  }
}

std::filesystem::path with_suffix(const std::filesystem::path& base, const std::string& suffix) {
  std::filesystem::path out = base;
  out.replace_extension();
  out += suffix;
  return out;
}

const char* time_scale_name(TimeScale s) {
  return s == TimeScale::Laboratory ? "laboratory" : "model";
}

struct Prepared {
  RegimeConfig config;
  DimensionlessParams dp;
  TimeSeries eta;          // smoothed and scaled by obs_a
  double t_renorm = 1.0;   // applied to the series time axis
  std::optional<double> cutoff;
};

Prepared prepare(const std::filesystem::path& series_path, const std::string& column,
                 const std::filesystem::path& config_path, const PreprocessOptions& opts) {
  Prepared p;
  TimeSeries raw = stage("input", [&] { return read_series_csv(series_path, column); });
  p.config = stage("config", [&] { return load_regime_config(config_path); });
  p.dp = to_dimensionless(p.config.physical);
  const bool lab = opts.time_scale == TimeScale::Laboratory;
  p.t_renorm = lab ? p.dp.t_renorm : 1.0;
  const double dt_seconds = lab ? raw.dt : raw.dt / p.dp.t_renorm;

  if (opts.cutoff) {
    if (*opts.cutoff != 0.0) p.cutoff = opts.cutoff;
  } else {
    p.cutoff = default_cutoff(p.config.physical, dt_seconds);
  }
  p.eta = stage("smoothing", [&] { return p.cutoff ? lowpass_smooth(raw, *p.cutoff) : raw; });
  // Only the scale is applied here; the shift is the unknown being estimated.
  ObservationModel scale_only{p.config.observation.a, 0.0, 0.0};
  p.eta = apply_observation(p.eta, scale_only, ObservationDirection::Forward);
  return p;
}

ScanGrid resolve_grid(const GridOptions& opts, const TimeSeries& eta) {
  if (!opts.b_min && !opts.b_max && !opts.step) return default_grid(eta, opts.points);
  if (!opts.b_min || !opts.b_max) throw std::invalid_argument("grid needs both --grid-min and --grid-max");
  if (opts.points < 2 && !opts.step) throw std::invalid_argument("grid needs at least two points");
  ScanGrid grid{*opts.b_min, *opts.b_max,
                opts.step.value_or((*opts.b_max - *opts.b_min) / static_cast<double>(opts.points - 1))};
  grid.validate();
  return grid;
}

ProvenanceInfo base_provenance(const std::filesystem::path& series, const std::filesystem::path& config,
                               const Prepared& p, const PreprocessOptions& opts, const std::string& command_line) {
  ProvenanceInfo info;
  info.tool_version = kVersion;
  info.command_line = command_line;
  info.input_file = series.string();
  info.input_hash = file_hash(series);
  info.config_file = config.string();
  info.config_hash = file_hash(config);
  info.time_scale = time_scale_name(opts.time_scale);
  info.cutoff = p.cutoff;
  info.observation_a = p.config.observation.a;
  return info;
}

std::string describe_minima(const ScanResult& s) {
  std::ostringstream out;
  out << "no |beta1| minimum qualifies; minima at b =";
  if (s.minima.empty()) out << " (none)";
  for (std::size_t i : s.minima) out << ' ' << s.b_values[i];
  if (s.slope_index) out << "; slope at b = " << s.b_values[*s.slope_index];
  return out.str();
}

}  // namespace

int exit_code_for(std::exception_ptr error) noexcept {
  try {
    if (error) std::rethrow_exception(error);
    return kExitOk;
  } catch (const ParseError&) {
    return kExitParse;
  } catch (const DegenerateFitError&) {
    return kExitDegenerate;
  } catch (const NumericalError&) {
    return kExitNumerical;
  } catch (const std::invalid_argument&) {
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error&) {
    return kExitParse;
  } catch (...) {
    return kExitNumerical;
  }
}

std::size_t cmd_simulate(const SimulateCommand& cmd) {
  const RegimeConfig cfg = stage("config", [&] { return load_regime_config(cmd.config); });
  const DimensionlessParams dp = to_dimensionless(cfg.physical);
  SimulationOptions opts;
  opts.dt = cmd.dt;
  opts.n_steps = cmd.steps;
  opts.transient = cmd.transient.value_or(cmd.steps / 5);
  opts.sample_every = cmd.sample_every;
  const Trajectory traj = stage("simulate", [&] { return simulate(dp, cmd.init, opts); });

  std::vector<double> t(traj.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = traj.y.time(i);
  const std::vector<std::string> header{"t", "phi", "y", "z"};
  const std::vector<std::vector<double>> cols{std::move(t), traj.phi.values, traj.y.values, traj.z.values};
  stage("output", [&] { write_csv(cmd.out, header, cols); });
  return traj.size();
}

std::vector<ExpectedRow> cmd_expected(const std::filesystem::path& bundle) {
  const auto configs = stage("config", [&] { return load_regime_bundle(bundle); });
  std::vector<ExpectedRow> rows;
  rows.reserve(configs.size());
  for (const auto& cfg : configs) {
    ExpectedRow row;
    row.regime = cfg.name;
    row.params = to_dimensionless(cfg.physical);
    row.alpha = effective_params(row.params);
    rows.push_back(row);
  }
  return rows;
}

std::string format_expected_table(const std::vector<ExpectedRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "regime" << std::right << std::setw(12) << "T_renorm" << std::setw(10)
      << "eps1" << std::setw(10) << "eps2" << std::setw(12) << "gamma" << std::setw(12) << "-beta0" << std::setw(13)
      << "beta1*1e3" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(8) << r.regime << std::right << std::fixed << std::setprecision(2) << std::setw(12)
        << r.params.t_renorm << std::setprecision(3) << std::setw(10) << r.params.eps1 << std::setw(10)
        << r.params.eps2 << std::setprecision(5) << std::setw(12) << r.params.gamma << std::setw(12)
        << r.neg_beta0() << std::setprecision(4) << std::setw(13) << r.beta1() * 1e3 << '\n';
  }
  return out.str();
}

void write_expected_csv(const std::filesystem::path& path, const std::vector<ExpectedRow>& rows) {
  std::string out = "regime,t_renorm,eps1,eps2,gamma,neg_beta0,beta1\n";
  for (const auto& r : rows) {
    out += r.regime + "," + format_double(r.params.t_renorm) + "," + format_double(r.params.eps1) + "," +
           format_double(r.params.eps2) + "," + format_double(r.params.gamma) + "," + format_double(r.neg_beta0()) +
           "," + format_double(r.beta1()) + "\n";
  }
  write_file_atomic(path, out);
}

std::optional<double> default_cutoff(const PhysicalSetup& setup, double dt_seconds) {
  const double parasite = setup.omega_rg / static_cast<double>(setup.m) + setup.omega_0 / static_cast<double>(setup.n);
  const double cycles_per_sample = parasite * dt_seconds;
  if (!(cycles_per_sample > 0.0) || cycles_per_sample >= 0.5) return std::nullopt;
  return 0.1 * cycles_per_sample;
}

Report cmd_fit(const FitCommand& cmd) {
  if (cmd.k_order < 1 || cmd.k_order > kMaxTaylorOrder) throw std::invalid_argument("--k-order must lie in [1, 5]");
  const Prepared p = prepare(cmd.series, cmd.column, cmd.config, cmd.preprocess);

  Report report;
  report.regime = p.config.name;
  report.dimensionless = p.dp;
  report.provenance = base_provenance(cmd.series, cmd.config, p, cmd.preprocess, cmd.command_line);
  report.provenance.k_order = cmd.k_order;
  report.provenance.method = cmd.method == FitMethod::Legacy ? "legacy" : "integrated";

  double b = 0.0;
  if (cmd.b_trial) {
    b = *cmd.b_trial;
    report.provenance.b_trial = b;
  } else {
    const ScanGrid grid = stage("grid", [&] { return resolve_grid(cmd.grid, p.eta); });
    report.provenance.grid_min = grid.b_min;
    report.provenance.grid_max = grid.at(grid.size() - 1);
    report.provenance.grid_step = grid.step;
    ScanOptions opts;
    opts.k_order = cmd.k_order;
    opts.drop_factor = cmd.drop_factor;
    opts.threads = cmd.threads;
    const ScanResult s = stage("scan", [&] { return scan(p.eta, grid, p.t_renorm, opts); });
    report.slope_index = s.slope_index;
    report.chosen_b = s.chosen_b;
    if (!s.chosen_b) throw DegenerateFitError("scan: " + describe_minima(s));
    b = *s.chosen_b;
  }

  const bool legacy = cmd.method == FitMethod::Legacy;
  const StateEnsemble ens = stage("assemble", [&] { return assemble_states(p.eta, b, p.t_renorm, legacy); });
  if (legacy) {
    const double floor = cmd.y_floor.value_or(default_y_floor(ens));
    report.provenance.y_floor = floor;
    report.estimated = stage("fit", [&] { return fit_legacy(ens, floor); });
  } else {
    report.estimated = stage("fit", [&] { return fit_integrated(ens, b, cmd.k_order); });
    const FunctionGraph graph = stage("reconstruct", [&] { return reconstruct_f4(ens, b, report.estimated); });
    const std::vector<std::string> header{"psi", "f4"};
    const std::vector<std::vector<double>> cols{graph.psi_sorted, graph.f4_values};
    stage("output", [&] { write_csv(cmd.f4_out.value_or(with_suffix(cmd.out, "_f4.csv")), header, cols); });
  }
  compare_with_expected(report);
  stage("output", [&] { write_file_atomic(cmd.out, to_json(report)); });
  return report;
}

void write_scan_csv(const std::filesystem::path& path, const ScanResult& result) {
  std::vector<double> mono(result.size());
  for (std::size_t i = 0; i < mono.size(); ++i) mono[i] = result.monotonic_flags[i] ? 1.0 : 0.0;
  const std::vector<std::string> header{"b_trial", "L", "abs_beta1", "beta0", "monotonic"};
  const std::vector<std::vector<double>> cols{result.b_values, result.l_values, result.beta1_abs, result.beta0,
                                              std::move(mono)};
  write_csv(path, header, cols);
}

ScanResult cmd_scan(const ScanCommand& cmd) {
  if (cmd.k_order < 1 || cmd.k_order > kMaxTaylorOrder) throw std::invalid_argument("--k-order must lie in [1, 5]");
  const Prepared p = prepare(cmd.series, cmd.column, cmd.config, cmd.preprocess);
  const ScanGrid grid = stage("grid", [&] { return resolve_grid(cmd.grid, p.eta); });
  ScanOptions opts;
  opts.k_order = cmd.k_order;
  opts.drop_factor = cmd.drop_factor;
  opts.threads = cmd.threads;
  const ScanResult result = stage("scan", [&] { return scan(p.eta, grid, p.t_renorm, opts); });
  stage("output", [&] { write_scan_csv(cmd.out, result); });

  ProvenanceInfo info = base_provenance(cmd.series, cmd.config, p, cmd.preprocess, cmd.command_line);
  nlohmann::ordered_json minima = nlohmann::ordered_json::array();
  for (std::size_t i : result.minima) minima.push_back(result.b_values[i]);
  nlohmann::ordered_json doc;
  doc["regime"] = p.config.name;
  doc["grid"] = {{"min", grid.b_min}, {"max", grid.at(grid.size() - 1)}, {"step", grid.step}, {"points", grid.size()}};
  doc["slope_index"] = result.slope_index ? nlohmann::ordered_json(*result.slope_index) : nullptr;
  doc["slope_b"] = result.slope_index ? nlohmann::ordered_json(result.b_values[*result.slope_index]) : nullptr;
  doc["chosen_index"] = result.chosen_index ? nlohmann::ordered_json(*result.chosen_index) : nullptr;
  doc["chosen_b"] = result.chosen_b ? nlohmann::ordered_json(*result.chosen_b) : nullptr;
  doc["minima_b"] = minima;
  doc["provenance"] = {{"tool_version", info.tool_version},
                       {"command_line", info.command_line},
                       {"input_file", info.input_file},
                       {"input_hash", info.input_hash},
                       {"config_file", info.config_file},
                       {"config_hash", info.config_hash},
                       {"time_scale", info.time_scale},
                       {"k_order", cmd.k_order},
                       {"drop_factor", cmd.drop_factor},
                       {"cutoff", info.cutoff ? nlohmann::ordered_json(*info.cutoff) : nullptr},
                       {"observation_a", info.observation_a.value_or(1.0)}};
  const auto summary = cmd.summary_out.value_or(with_suffix(cmd.out, ".json"));
  stage("output", [&] { write_file_atomic(summary, doc.dump(2) + "\n"); });
  return result;
}

std::vector<std::size_t> cmd_spikes(const SpikesCommand& cmd) {
  const TimeSeries y = stage("input", [&] { return read_series_csv(cmd.series, cmd.column); });
  SpikeOptions opts;
  opts.threshold = cmd.threshold;
  opts.burst_gap = cmd.burst_gap;
  std::vector<std::size_t> counts = count_spikes_per_burst(y, opts);
  if (cmd.out) {
    std::string text = "burst,spikes\n";
    for (std::size_t i = 0; i < counts.size(); ++i) text += std::to_string(i) + "," + std::to_string(counts[i]) + "\n";
    stage("output", [&] { write_file_atomic(*cmd.out, text); });
  }
  return counts;
}

}  // namespace pllid
