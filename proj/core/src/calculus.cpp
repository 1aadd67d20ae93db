#include "pllid/calculus.hpp"

#include <stdexcept>

namespace pllid {

TimeSeries differentiate(const TimeSeries& series) {
  if (series.size() < 3) throw std::invalid_argument("differentiation needs at least 3 samples");
  if (!(series.dt > 0.0)) throw std::invalid_argument("time series step must be positive");
  const std::size_t n = series.size();
  const double inv = 1.0 / (2.0 * series.dt);
  std::vector<double> out(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i - 1] = (series[i + 1] - series[i - 1]) * inv;
  return {series.t0 + series.dt, series.dt, std::move(out)};
}

TimeSeries integrate(const TimeSeries& series) {
  series.validate();
  const std::size_t n = series.size();
  const double half = 0.5 * series.dt;
  std::vector<double> out(n);
  out[0] = 0.0;
  // Kahan-compensated running sum keeps long records accurate.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double term = half * (series[i - 1] + series[i]) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
    out[i] = sum;
  }
  return {series.t0, series.dt, std::move(out)};
}

}  // namespace pllid
