#include "pllid/observation.hpp"

#include <stdexcept>

namespace pllid {

TimeSeries apply_observation(const TimeSeries& series, const ObservationModel& model,
                             ObservationDirection direction) {
  if (model.a == 0.0) throw std::invalid_argument("observation scale a must be non-zero");
  TimeSeries out = series;
  if (direction == ObservationDirection::Forward) {
    for (double& v : out.values) v = model.a * v + model.b;
  } else {
    for (double& v : out.values) v = (v - model.b) / model.a;
  }
  return out;
}

}  // namespace pllid
