#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "pllid/deltas.hpp"

namespace pllid {

inline constexpr double kDefaultConditionLimit = 1e12;

struct FitResult {
  Eigen::VectorXd beta;
  double l_value = 0.0;     // sum of squared increments at the optimum
  double condition = 1.0;   // 2-norm condition of the column-equilibrated regressors
  std::size_t n_points = 0;
  bool valid = false;       // false when rank deficient or condition > limit
  bool monotonic_phase = false;
  FitMethod method = FitMethod::Integrated;
};

/// Minimises sum((rows * beta - targets)^2) by column-pivoted Householder QR.
/// Throws DegenerateFitError with fewer than width + 1 rows.
FitResult solve_least_squares(const DeltaSystem& sys, double condition_limit = kDefaultConditionLimit);

/// rows * beta - targets.
Eigen::VectorXd residuals(const DeltaSystem& sys, const Eigen::VectorXd& beta);

}  // namespace pllid
