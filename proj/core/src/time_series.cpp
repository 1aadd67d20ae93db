#include "pllid/time_series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pllid {

void TimeSeries::validate(std::size_t min_length) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("time series step must be positive and finite");
  }
  if (values.size() < min_length) {
    throw std::invalid_argument("time series needs at least " + std::to_string(min_length) + " samples, got " +
                                std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("time series value " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace pllid
