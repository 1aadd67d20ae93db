// Command-line front end: simulate, expected, fit, scan, spikes.

#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pllid/commands.hpp"
#include "pllid/csv.hpp"
#include "pllid/version.hpp"

namespace {

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

const std::map<std::string, pllid::TimeScale> kTimeScales{
    {"laboratory", pllid::TimeScale::Laboratory}, {"model", pllid::TimeScale::Model}};
const std::map<std::string, pllid::FitMethod> kMethods{
    {"integrated", pllid::FitMethod::Integrated}, {"legacy", pllid::FitMethod::Legacy}};

void add_preprocess(CLI::App* sub, pllid::PreprocessOptions& pre, std::string& column) {
  sub->add_option("--column", column, "Value column of the series CSV (default: second column)");
  sub->add_option("--cutoff", pre.cutoff,
                  "Low-pass cutoff in cycles per sample, 0 disables (default: tenth of the XOR parasite)")
      ->check(CLI::Range(0.0, 0.5));
  sub->add_option("--time-scale", pre.time_scale, "Time axis of the series: laboratory (s) or model")
      ->transform(CLI::CheckedTransformer(kTimeScales, CLI::ignore_case));
}

void add_grid(CLI::App* sub, pllid::GridOptions& grid, double& drop, unsigned& threads, int& k_order) {
  sub->add_option("--grid-min", grid.b_min, "Lowest trial shift");
  sub->add_option("--grid-max", grid.b_max, "Highest trial shift");
  sub->add_option("--grid-step", grid.step, "Grid step (default: span over --grid-points)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--grid-points", grid.points, "Number of grid points")->check(CLI::Range(10, 1000000));
  sub->add_option("--drop-factor", drop, "Minimum L drop marking the slope")->check(CLI::PositiveNumber);
  sub->add_option("--threads", threads, "Worker threads, 0 picks the hardware count");
  sub->add_option("--k-order", k_order, "Taylor order of the time-lag terms")->check(CLI::Range(1, 5));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identify a phase-locked loop with a bandpass filter from time series"};
  app.set_version_flag("--version", std::string(pllid::kVersion));
  app.require_subcommand(1);
  const std::string command_line = join_args(argc, argv);

  pllid::SimulateCommand sim;
  std::vector<double> init;
  auto* simulate = app.add_subcommand("simulate", "Integrate the model and write t,phi,y,z");
  simulate->add_option("--config", sim.config, "Regime config file")->required();
  simulate->add_option("--out", sim.out, "Output CSV")->required();
  simulate->add_option("--dt", sim.dt, "Integration step (model time)")->check(CLI::PositiveNumber);
  simulate->add_option("--steps", sim.steps, "Number of integration steps");
  simulate->add_option("--transient", sim.transient, "Leading steps to discard (default: 20% of steps)");
  simulate->add_option("--sample-every", sim.sample_every, "Keep every n-th step")->check(CLI::PositiveNumber);
  simulate->add_option("--init", init, "Initial phi y z")->expected(3);

  std::string expected_config;
  std::string expected_out;
  auto* expected = app.add_subcommand("expected", "Tabulate expected coefficients for a regime bundle");
  expected->add_option("--config", expected_config, "Config file or directory of *.cfg")->required();
  expected->add_option("--out", expected_out, "Optional CSV copy of the table");

  pllid::FitCommand fit;
  std::string fit_b;
  std::string fit_method = "integrated";
  auto* fitc = app.add_subcommand("fit", "Fit coefficients at a fixed or scanned shift");
  fitc->add_option("series", fit.series, "Series CSV (t, value)")->required();
  fitc->add_option("--config", fit.config, "Regime config file")->required();
  fitc->add_option("--out", fit.out, "JSON report")->required();
  fitc->add_option("--f4-out", fit.f4_out, "Reconstructed nonlinearity CSV (default: <out>_f4.csv)");
  fitc->add_option("--b-trial", fit_b, "Trial shift, or 'scan' to search for it (default: scan)");
  fitc->add_option("--method", fit_method, "integrated or legacy")->check(CLI::IsMember({"integrated", "legacy"}));
  fitc->add_option("--y-floor", fit.y_floor, "Legacy method: drop rows with |y| below this")
      ->check(CLI::NonNegativeNumber);
  add_preprocess(fitc, fit.preprocess, fit.column);
  add_grid(fitc, fit.grid, fit.drop_factor, fit.threads, fit.k_order);

  pllid::ScanCommand sc;
  auto* scanc = app.add_subcommand("scan", "Sweep the trial shift and write L and |beta1| curves");
  scanc->add_option("series", sc.series, "Series CSV (t, value)")->required();
  scanc->add_option("--config", sc.config, "Regime config file")->required();
  scanc->add_option("--out", sc.out, "Curve CSV")->required();
  scanc->add_option("--summary-out", sc.summary_out, "JSON summary (default: <out>.json)");
  add_preprocess(scanc, sc.preprocess, sc.column);
  add_grid(scanc, sc.grid, sc.drop_factor, sc.threads, sc.k_order);

  pllid::SpikesCommand sp;
  auto* spikes = app.add_subcommand("spikes", "Count spikes per burst");
  spikes->add_option("series", sp.series, "Series CSV")->required();
  spikes->add_option("--column", sp.column, "Value column (default: second column)");
  spikes->add_option("--threshold", sp.threshold, "Crossing level (default: mid-range)");
  spikes->add_option("--burst-gap", sp.burst_gap, "Minimum interval separating bursts")
      ->check(CLI::PositiveNumber);
  spikes->add_option("--out", sp.out, "Optional CSV of counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pllid::kExitOk : pllid::kExitUsage;
  }

  try {
    if (*simulate) {
      if (!init.empty()) sim.init = {init[0], init[1], init[2]};
      const auto rows = pllid::cmd_simulate(sim);
      std::cout << "wrote " << rows << " rows to " << sim.out.string() << '\n';
    } else if (*expected) {
      const auto rows = pllid::cmd_expected(expected_config);
      std::cout << pllid::format_expected_table(rows);
      if (!expected_out.empty()) pllid::write_expected_csv(expected_out, rows);
    } else if (*fitc) {
      if (!fit_b.empty() && fit_b != "scan") {
        std::size_t used = 0;
        try {
          fit.b_trial = std::stod(fit_b, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != fit_b.size()) {
          std::cerr << "error: --b-trial expects a number or 'scan'\n";
          return pllid::kExitUsage;
        }
      }
      fit.method = kMethods.at(fit_method);
      fit.command_line = command_line;
      const pllid::Report report = pllid::cmd_fit(fit);
      const auto& beta = report.estimated.beta;
      std::cout << "regime " << report.regime;
      if (report.chosen_b) std::cout << "  b=" << pllid::format_double(*report.chosen_b);
      for (Eigen::Index i = 0; i < beta.size(); ++i) std::cout << "  beta" << i << '=' << pllid::format_double(beta[i]);
      std::cout << "  L=" << pllid::format_double(report.estimated.l_value) << '\n';
      if (!report.estimated.valid || report.estimated.monotonic_phase) {
        std::cerr << "error: fit is degenerate (condition " << report.estimated.condition
                  << (report.estimated.monotonic_phase ? ", monotonic phase" : "") << ")\n";
        return pllid::kExitDegenerate;
      }
    } else if (*scanc) {
      sc.command_line = command_line;
      const pllid::ScanResult result = pllid::cmd_scan(sc);
      std::cout << result.size() << " grid points";
      if (result.slope_index) std::cout << ", slope at b=" << pllid::format_double(result.b_values[*result.slope_index]);
      if (result.chosen_b) {
        std::cout << ", chosen b=" << pllid::format_double(*result.chosen_b) << '\n';
      } else {
        std::cout << ", no qualifying minimum\n";
        return pllid::kExitDegenerate;
      }
    } else if (*spikes) {
      const auto counts = pllid::cmd_spikes(sp);
      std::cout << counts.size() << " bursts:";
      for (auto c : counts) std::cout << ' ' << c;
      std::cout << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pllid::exit_code_for(std::current_exception());
  }
  return pllid::kExitOk;
}
