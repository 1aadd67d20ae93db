#include "pllid/report.hpp"

#include <cmath>

#include <json.hpp>

namespace pllid {
namespace {

using nlohmann::ordered_json;

template <class T>
ordered_json optional_value(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json number(double x) {
  return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

const char* method_name(FitMethod m) {
  return m == FitMethod::Legacy ? "legacy" : "integrated";
}

}  // namespace

std::optional<double> relative_error(double estimate, double expected) {
  if (expected == 0.0 || !std::isfinite(estimate) || !std::isfinite(expected)) return std::nullopt;
  return std::abs(estimate - expected) / std::abs(expected);
}

void compare_with_expected(Report& report) {
  report.expected = effective_params(report.dimensionless);
  const FitResult& fit = report.estimated;
  if (fit.beta.size() < 2) return;
  if (fit.method == FitMethod::Legacy) {
    // Legacy coefficients are (alpha0, alpha1); report them on the beta axes.
    report.rel_error_beta0 = relative_error(fit.beta(1), report.expected.alpha1);
    report.rel_error_beta1 = relative_error(fit.beta(0), report.expected.alpha0);
  } else {
    report.rel_error_beta0 = relative_error(fit.beta(0), report.expected.alpha1);
    report.rel_error_beta1 = relative_error(fit.beta(1), report.expected.alpha0);
  }
}

std::string to_json(const Report& report) {
  const FitResult& fit = report.estimated;
  ordered_json beta = ordered_json::array();
  for (Eigen::Index i = 0; i < fit.beta.size(); ++i) beta.push_back(number(fit.beta(i)));

  const ProvenanceInfo& p = report.provenance;
  ordered_json doc;
  doc["regime"] = report.regime;
  doc["dimensionless"] = {{"eps1", report.dimensionless.eps1},
                          {"eps2", report.dimensionless.eps2},
                          {"gamma", report.dimensionless.gamma},
                          {"t_renorm", report.dimensionless.t_renorm}};
  doc["expected"] = {{"beta0", report.expected.alpha1}, {"beta1", report.expected.alpha0}};
  doc["estimated"] = {{"method", method_name(fit.method)},
                      {"beta", beta},
                      {"l_value", number(fit.l_value)},
                      {"condition", number(fit.condition)},
                      {"n_points", fit.n_points},
                      {"valid", fit.valid},
                      {"monotonic_phase", fit.monotonic_phase}};
  doc["chosen_b"] = optional_value(report.chosen_b);
  doc["slope_index"] = optional_value(report.slope_index);
  doc["relative_errors"] = {{"beta0", optional_value(report.rel_error_beta0)},
                            {"beta1", optional_value(report.rel_error_beta1)}};
  doc["provenance"] = {{"tool_version", p.tool_version},
                       {"command_line", p.command_line},
                       {"input_file", p.input_file},
                       {"input_hash", p.input_hash},
                       {"config_file", p.config_file},
                       {"config_hash", p.config_hash},
                       {"method", p.method},
                       {"time_scale", p.time_scale},
                       {"k_order", p.k_order},
                       {"b_trial", optional_value(p.b_trial)},
                       {"grid", {{"min", optional_value(p.grid_min)},
                                 {"max", optional_value(p.grid_max)},
                                 {"step", optional_value(p.grid_step)}}},
                       {"cutoff", optional_value(p.cutoff)},
                       {"y_floor", optional_value(p.y_floor)},
                       {"observation_a", optional_value(p.observation_a)}};
  return doc.dump(2) + "\n";
}

}  // namespace pllid
