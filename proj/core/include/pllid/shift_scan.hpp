#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pllid/fit.hpp"
#include "pllid/time_series.hpp"

namespace pllid {

/// Uniform grid of trial shifts b_min, b_min + step, ... <= b_max.
struct ScanGrid {
  double b_min = 0.0;
  double b_max = 0.0;
  double step = 0.0;

  std::size_t size() const;
  double at(std::size_t i) const { return b_min + static_cast<double>(i) * step; }
  /// b_min < b_max, step > 0, at least 10 points.
  void validate() const;
};

/// Grid of `points` values centred on -mean(eta) with half-width 3 stddev(eta).
ScanGrid default_grid(const TimeSeries& eta, std::size_t points = 200);

struct ScanOptions {
  int k_order = kDefaultTaylorOrder;
  double drop_factor = 100.0;
  double condition_limit = kDefaultConditionLimit;
  /// Worker threads for the per-point fits; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

struct ScanResult {
  std::vector<double> b_values;
  std::vector<double> l_values;
  std::vector<double> beta1_abs;
  std::vector<double> beta0;
  std::vector<bool> monotonic_flags;
  std::vector<bool> valid;
  std::optional<std::size_t> slope_index;
  std::optional<double> chosen_b;
  std::optional<std::size_t> chosen_index;
  /// Every strict local minimum of beta1_abs, eligible or not.
  std::vector<std::size_t> minima;

  std::size_t size() const { return b_values.size(); }
};

/// Fits the integrated equation at every grid point, then locates the slope
/// and the chosen shift. A point whose fit throws is recorded as invalid with
/// NaN entries.
ScanResult scan(const TimeSeries& eta, const ScanGrid& grid, double t_renorm, const ScanOptions& opts = {});

/// Same as scan() but reuses an already assembled ensemble (b_trial ignored).
ScanResult scan_ensemble(const StateEnsemble& ens, const ScanGrid& grid, const ScanOptions& opts = {});

/// Smallest index i whose left neighbour is at least sqrt(drop_factor) above
/// it and where the minimum of L from i onward is at most the median of the
/// points before i divided by drop_factor.
std::optional<std::size_t> detect_slope(const ScanResult& scan, double drop_factor = 100.0);

struct ShiftChoice {
  std::optional<std::size_t> index;
  std::optional<double> b;
  std::vector<std::size_t> minima;
};

/// Rightmost strict local minimum of |beta1| strictly left of the slope, on a
/// non-monotonic point. Boundary points never qualify.
ShiftChoice choose_shift(const ScanResult& scan);

}  // namespace pllid
