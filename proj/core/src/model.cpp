#include "pllid/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pllid/error.hpp"

namespace pllid {
namespace {

ModelState advance(const ModelState& s, const Derivative& d, double h) {
  return {s.phi + h * d[0], s.y + h * d[1], s.z + h * d[2]};
}

bool finite(const ModelState& s) {
  return std::isfinite(s.phi) && std::isfinite(s.y) && std::isfinite(s.z);
}

}  // namespace

ModelState rk4_step(const ModelState& s, const DimensionlessParams& dp, double dt) {
  const Derivative k1 = rhs(s, dp);
  const Derivative k2 = rhs(advance(s, k1, 0.5 * dt), dp);
  const Derivative k3 = rhs(advance(s, k2, 0.5 * dt), dp);
  const Derivative k4 = rhs(advance(s, k3, dt), dp);
  const double w = dt / 6.0;
  return {s.phi + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
          s.y + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
          s.z + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])};
}

Trajectory simulate(const DimensionlessParams& dp, const ModelState& init, const SimulationOptions& opts) {
  dp.validate();
  if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) throw std::invalid_argument("simulation step must be positive");
  if (opts.n_steps == 0) throw std::invalid_argument("simulation needs at least one step");
  if (opts.sample_every == 0) throw std::invalid_argument("sample_every must be >= 1");
  if (opts.transient >= opts.n_steps) throw std::invalid_argument("transient must be shorter than the run");
  if (!finite(init)) throw std::invalid_argument("initial state must be finite");

  const std::size_t kept = (opts.n_steps - opts.transient + opts.sample_every - 1) / opts.sample_every;
  const double t0 = static_cast<double>(opts.transient) * opts.dt;
  const double out_dt = static_cast<double>(opts.sample_every) * opts.dt;
  Trajectory out{TimeSeries(t0, out_dt, {}), TimeSeries(t0, out_dt, {}), TimeSeries(t0, out_dt, {})};
  out.phi.values.reserve(kept);
  out.y.values.reserve(kept);
  out.z.values.reserve(kept);

  ModelState s = init;
  for (std::size_t k = 0; k < opts.n_steps; ++k) {
    if (k >= opts.transient && (k - opts.transient) % opts.sample_every == 0) {
      out.phi.values.push_back(s.phi);
      out.y.values.push_back(s.y);
      out.z.values.push_back(s.z);
    }
    if (k + 1 == opts.n_steps) break;
    s = rk4_step(s, dp, opts.dt);
    if (!finite(s)) {
      throw DivergenceError(k + 1, "simulation diverged at step " + std::to_string(k + 1));
    }
  }
  return out;
}

}  // namespace pllid
