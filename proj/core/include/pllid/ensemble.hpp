#pragma once

#include <cstddef>
#include <vector>

#include "pllid/time_series.hpp"

namespace pllid {

/// Aligned state arrays built from one observable, in model time.
///
/// `t` is centred so that t[i] + t[N-1-i] == 0. `psi` is the integral of the
/// observable, `zeta` its first derivative and `dzeta` the second derivative
/// (present only when requested). `phase` is the candidate phase
/// psi + b_trial * t the ensemble was assembled for.
struct StateEnsemble {
  std::vector<double> t;
  std::vector<double> psi;
  std::vector<double> eta;
  std::vector<double> zeta;
  std::vector<double> dzeta;
  std::vector<double> phase;
  double b_trial = 0.0;
  double dt = 0.0;

  std::size_t size() const { return t.size(); }
  bool has_second_derivative() const { return !dzeta.empty(); }
};

/// psi + b_trial * t, element-wise.
std::vector<double> candidate_phase(const StateEnsemble& ens, double b_trial);

/// Builds the ensemble from the observable `eta` sampled in laboratory time.
/// The time axis is multiplied by `t_renorm` before integration and
/// differentiation. One edge sample is trimmed from each end, or two when the
/// second derivative is requested.
StateEnsemble assemble_states(const TimeSeries& eta, double b_trial, double t_renorm,
                              bool need_second_derivative);

}  // namespace pllid
