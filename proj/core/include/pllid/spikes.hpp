#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pllid/time_series.hpp"

namespace pllid {

struct SpikeOptions {
  /// Level for upward crossings; defaults to the midpoint of the series range.
  std::optional<double> threshold;
  /// Spikes closer than this (in series time units) belong to one burst.
  /// Defaults to a split at the largest jump in the sorted inter-spike intervals.
  std::optional<double> burst_gap;
};

/// Times of upward threshold crossings, linearly interpolated between samples.
std::vector<double> spike_times(const TimeSeries& y, double threshold);

/// Number of spikes in each burst, in time order. Empty when y never crosses.
std::vector<std::size_t> count_spikes_per_burst(const TimeSeries& y, const SpikeOptions& opts = {});

/// Burst gap used when none is supplied; see SpikeOptions::burst_gap.
double default_burst_gap(const std::vector<double>& intervals);

}  // namespace pllid
