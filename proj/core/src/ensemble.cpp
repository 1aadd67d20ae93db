#include "pllid/ensemble.hpp"

#include <stdexcept>
#include <string>

#include "pllid/calculus.hpp"

namespace pllid {

std::vector<double> candidate_phase(const StateEnsemble& ens, double b_trial) {
  std::vector<double> out(ens.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ens.psi[i] + b_trial * ens.t[i];
  return out;
}

StateEnsemble assemble_states(const TimeSeries& eta, double b_trial, double t_renorm, bool need_second_derivative) {
  if (!(t_renorm > 0.0)) throw std::invalid_argument("t_renorm must be positive");
  eta.validate();
  const std::size_t trim = need_second_derivative ? 2 : 1;
  const std::size_t n = eta.size();
  if (n < 2 * trim + 2) {
    throw std::invalid_argument("record of " + std::to_string(n) + " samples is too short after trimming");
  }

  const TimeSeries model_eta(0.0, eta.dt * t_renorm, eta.values);
  const TimeSeries psi = integrate(model_eta);
  const TimeSeries zeta = differentiate(model_eta);
  TimeSeries dzeta;
  if (need_second_derivative) dzeta = differentiate(zeta);

  const std::size_t count = n - 2 * trim;
  StateEnsemble ens;
  ens.dt = model_eta.dt;
  ens.b_trial = b_trial;
  ens.t.resize(count);
  ens.psi.assign(psi.values.begin() + static_cast<std::ptrdiff_t>(trim),
                 psi.values.begin() + static_cast<std::ptrdiff_t>(trim + count));
  ens.eta.assign(eta.values.begin() + static_cast<std::ptrdiff_t>(trim),
                 eta.values.begin() + static_cast<std::ptrdiff_t>(trim + count));
  // zeta[i] belongs to sample i + 1, dzeta[i] to sample i + 2.
  ens.zeta.assign(zeta.values.begin() + static_cast<std::ptrdiff_t>(trim - 1),
                  zeta.values.begin() + static_cast<std::ptrdiff_t>(trim - 1 + count));
  if (need_second_derivative) ens.dzeta = dzeta.values;

  const double mid = 0.5 * static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) ens.t[i] = (static_cast<double>(i) - mid) * ens.dt;
  ens.phase = candidate_phase(ens, b_trial);
  return ens;
}

}  // namespace pllid
