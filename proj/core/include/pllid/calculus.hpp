#pragma once

#include "pllid/time_series.hpp"

namespace pllid {

/// Central differences on the interior; the output starts one step later and
/// is two samples shorter.
TimeSeries differentiate(const TimeSeries& series);

/// Cumulative trapezoidal integral starting at zero, same time axis.
TimeSeries integrate(const TimeSeries& series);

}  // namespace pllid
