#pragma once

#include <cstddef>
#include <vector>

namespace pllid {

/// Uniformly sampled scalar record.
struct TimeSeries {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;

  TimeSeries() = default;
  TimeSeries(double t0_, double dt_, std::vector<double> values_)
      : t0(t0_), dt(dt_), values(std::move(values_)) {}

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  double operator[](std::size_t i) const { return values[i]; }

  /// dt > 0, at least `min_length` samples, all values finite.
  void validate(std::size_t min_length = 2) const;
};

}  // namespace pllid
