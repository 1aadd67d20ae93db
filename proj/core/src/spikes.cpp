#include "pllid/spikes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pllid {
namespace {

// Minimum jump between consecutive sorted inter-spike intervals that separates
// intra-burst from inter-burst intervals.
constexpr double kBurstSplitRatio = 1.5;

}  // namespace

std::vector<double> spike_times(const TimeSeries& y, double threshold) {
  std::vector<double> times;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double a = y[i - 1];
    const double b = y[i];
    if (a < threshold && b >= threshold) {
      const double frac = (threshold - a) / (b - a);
      times.push_back(y.time(i - 1) + frac * y.dt);
    }
  }
  return times;
}

double default_burst_gap(const std::vector<double>& intervals) {
  if (intervals.empty()) return 0.0;
  std::vector<double> sorted = intervals;
  std::sort(sorted.begin(), sorted.end());
  double best_ratio = 1.0;
  double gap = 0.5 * sorted.front();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1] <= 0.0) continue;
    const double ratio = sorted[i] / sorted[i - 1];
    if (ratio > best_ratio) {
      best_ratio = ratio;
      gap = std::sqrt(sorted[i] * sorted[i - 1]);
    }
  }
  // No clear split: every spike is its own burst.
  return best_ratio >= kBurstSplitRatio ? gap : 0.5 * sorted.front();
}

std::vector<std::size_t> count_spikes_per_burst(const TimeSeries& y, const SpikeOptions& opts) {
  if (y.empty()) throw std::invalid_argument("spike counting needs a non-empty series");
  const auto [lo, hi] = std::minmax_element(y.values.begin(), y.values.end());
  const double threshold = opts.threshold.value_or(0.5 * (*lo + *hi));
  const std::vector<double> times = spike_times(y, threshold);
  if (times.empty()) return {};

  std::vector<double> intervals(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) intervals[i - 1] = times[i] - times[i - 1];
  const double gap = opts.burst_gap.value_or(default_burst_gap(intervals));

  std::vector<std::size_t> counts{1};
  for (double isi : intervals) {
    if (isi < gap) {
      ++counts.back();
    } else {
      counts.push_back(1);
    }
  }
  return counts;
}

}  // namespace pllid
