#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "pllid/params.hpp"
#include "pllid/time_series.hpp"

namespace pllid {

/// Phase difference and its first two time derivatives.
struct ModelState {
  double phi = 0.0;
  double y = 0.0;
  double z = 0.0;
};

using Derivative = std::array<double, 3>;

/// Right-hand side of the loop equations:
///   phi' = y,  y' = z,  eps1 eps2 z' = gamma - (eps1 + eps2) z - (1 + eps1 cos phi) y.
inline Derivative rhs(const ModelState& s, const DimensionlessParams& dp) {
  const double denom = dp.eps1 * dp.eps2;
  const double dz = (dp.gamma - (dp.eps1 + dp.eps2) * s.z - (1.0 + dp.eps1 * std::cos(s.phi)) * s.y) / denom;
  return {s.y, s.z, dz};
}

/// One classical fourth-order Runge-Kutta step.
ModelState rk4_step(const ModelState& s, const DimensionlessParams& dp, double dt);

struct SimulationOptions {
  double dt = 1e-3;
  std::size_t n_steps = 0;
  std::size_t transient = 0;
  std::size_t sample_every = 1;
};

/// The three state components sampled on a common uniform grid.
struct Trajectory {
  TimeSeries phi;
  TimeSeries y;
  TimeSeries z;

  std::size_t size() const { return y.size(); }
};

/// Fixed-step integration. Sample k sits at time k*dt for k in [0, n_steps);
/// samples with k < transient are dropped and the rest are decimated by
/// sample_every. Throws DivergenceError on a non-finite state.
Trajectory simulate(const DimensionlessParams& dp, const ModelState& init, const SimulationOptions& opts);

/// Default initial condition for regime runs.
inline constexpr ModelState kDefaultInitialState{0.0, 0.1, 0.0};

}  // namespace pllid
