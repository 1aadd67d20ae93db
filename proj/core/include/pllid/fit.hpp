#pragma once

#include <vector>

#include "pllid/deltas.hpp"
#include "pllid/ensemble.hpp"
#include "pllid/least_squares.hpp"

namespace pllid {

inline constexpr int kDefaultTaylorOrder = 1;
inline constexpr int kMaxTaylorOrder = 5;

/// Integrated-equation identification. beta[0] estimates alpha1, beta[1]
/// estimates alpha0 minus the phase-drift term, higher entries the remaining
/// Taylor coefficients.
FitResult fit_integrated(const StateEnsemble& ens, double b_trial, int k_order = kDefaultTaylorOrder,
                         double condition_limit = kDefaultConditionLimit);

/// Direct identification; beta = (alpha0, alpha1). Needs the second derivative.
FitResult fit_legacy(const StateEnsemble& ens, double y_floor,
                     double condition_limit = kDefaultConditionLimit);

/// 5% of max |eta + b_trial| over the ensemble.
double default_y_floor(const StateEnsemble& ens);

enum class F4Source { Pointwise, Cumulative };

/// Reconstructed nonlinear function sampled at the candidate phase, sorted.
struct FunctionGraph {
  std::vector<double> psi_sorted;
  std::vector<double> f4_values;
  F4Source source = F4Source::Pointwise;

  std::size_t size() const { return psi_sorted.size(); }
};

/// Pointwise: beta0 eta + sum_k beta_k t^k - zeta. Cumulative: running sum of
/// the increments along rank order starting at zero, which equals the
/// pointwise graph up to one additive constant.
FunctionGraph reconstruct_f4(const StateEnsemble& ens, double b_trial, const FitResult& fit,
                             F4Source source = F4Source::Pointwise);

}  // namespace pllid
