#pragma once

#include "pllid/time_series.hpp"

namespace pllid {

/// Linear observation of the model variable: y = a * eta + b. The phase
/// constant c never enters the identification and is kept for completeness.
struct ObservationModel {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
};

enum class ObservationDirection { Forward, Inverse };

/// Forward maps eta -> a eta + b, Inverse maps y -> (y - b) / a.
TimeSeries apply_observation(const TimeSeries& series, const ObservationModel& model,
                             ObservationDirection direction);

}  // namespace pllid
