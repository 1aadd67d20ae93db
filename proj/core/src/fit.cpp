#include "pllid/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pllid/error.hpp"
#include "pllid/sort_map.hpp"

namespace pllid {

FitResult fit_integrated(const StateEnsemble& ens, double b_trial, int k_order, double condition_limit) {
  if (k_order < 1 || k_order > kMaxTaylorOrder) {
    throw std::invalid_argument("Taylor order must lie in [1, 5]");
  }
  const std::vector<double> phase = candidate_phase(ens, b_trial);
  const SortMap map = build_sort_map(phase);
  const DeltaSystem sys = build_deltas_integrated(ens, map, k_order);
  FitResult fit = solve_least_squares(sys, condition_limit);
  fit.monotonic_phase = strictly_increasing(phase);
  return fit;
}

double default_y_floor(const StateEnsemble& ens) {
  double peak = 0.0;
  for (double v : ens.eta) peak = std::max(peak, std::abs(v + ens.b_trial));
  return 0.05 * peak;
}

FitResult fit_legacy(const StateEnsemble& ens, double y_floor, double condition_limit) {
  const SortMap map = build_sort_map(ens.phase);
  const DeltaSystem sys = build_deltas_legacy(ens, map, y_floor);
  FitResult fit = solve_least_squares(sys, condition_limit);
  fit.monotonic_phase = strictly_increasing(ens.phase);
  return fit;
}

namespace {

double f4_at(const StateEnsemble& ens, const Eigen::VectorXd& beta, std::size_t i) {
  double value = beta(0) * ens.eta[i] - ens.zeta[i];
  double power = 1.0;
  for (Eigen::Index k = 1; k < beta.size(); ++k) {
    power *= ens.t[i];
    value += beta(k) * power;
  }
  return value;
}

}  // namespace

FunctionGraph reconstruct_f4(const StateEnsemble& ens, double b_trial, const FitResult& fit, F4Source source) {
  if (fit.method != FitMethod::Integrated || fit.beta.size() < 2) {
    throw std::invalid_argument("f4 reconstruction needs an integrated-method fit");
  }
  const std::vector<double> phase = candidate_phase(ens, b_trial);
  const SortMap map = build_sort_map(phase);
  const std::size_t n = ens.size();

  FunctionGraph graph;
  graph.source = source;
  graph.psi_sorted.resize(n);
  graph.f4_values.resize(n);
  for (std::size_t r = 0; r < n; ++r) graph.psi_sorted[r] = phase[map.q_inv[r]];

  if (source == F4Source::Pointwise) {
    for (std::size_t r = 0; r < n; ++r) graph.f4_values[r] = f4_at(ens, fit.beta, map.q_inv[r]);
    return graph;
  }

  const DeltaSystem sys = build_deltas_integrated(ens, map, static_cast<int>(fit.beta.size()) - 1);
  const Eigen::VectorXd delta = residuals(sys, fit.beta);
  // Neumaier summation of the increments along rank order.
  double sum = 0.0;
  double comp = 0.0;
  graph.f4_values[0] = 0.0;
  for (std::size_t r = 1; r < n; ++r) {
    const double x = delta(static_cast<Eigen::Index>(r - 1));
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
    graph.f4_values[r] = sum + comp;
  }
  return graph;
}

}  // namespace pllid
