#include "pllid/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pllid {
namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(field) + " must be positive and finite, got " + std::to_string(value));
  }
}

}  // namespace

void PhysicalSetup::validate() const {
  require_positive(omega_rg, "omega_rg_hz");
  if (m < 1) throw std::invalid_argument("m must be an integer >= 1");
  require_positive(omega_0, "omega_0_hz");
  if (n < 1) throw std::invalid_argument("n must be an integer >= 1");
  require_positive(omega_h, "omega_h_rad_s");
  require_positive(r1, "r1_ohm");
  require_positive(c1, "c1_f");
  require_positive(r2, "r2_ohm");
  require_positive(c2, "c2_f");
}

void DimensionlessParams::validate() const {
  require_positive(eps1, "eps1");
  require_positive(eps2, "eps2");
  require_positive(t_renorm, "t_renorm");
  if (!std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite");
}

DimensionlessParams to_dimensionless(const PhysicalSetup& setup) {
  setup.validate();
  const double nd = static_cast<double>(setup.n);
  const double md = static_cast<double>(setup.m);
  const double t_renorm = setup.omega_h / nd;
  // Divided frequencies are cyclic; the hold band is already angular.
  const double detuning = 2.0 * std::numbers::pi * (setup.omega_rg / md - setup.omega_0 / nd);
  DimensionlessParams dp;
  dp.eps1 = t_renorm * setup.t1();
  dp.eps2 = t_renorm * setup.t2();
  dp.gamma = detuning / t_renorm;
  dp.t_renorm = t_renorm;
  return dp;
}

AlphaPair effective_params(const DimensionlessParams& dp) {
  dp.validate();
  const double prod = dp.eps1 * dp.eps2;
  return {dp.gamma / prod, -(dp.eps1 + dp.eps2) / prod};
}

PhysicalRecovery invert_dimensionless(const DimensionlessParams& dp, const PhysicalSetup& setup) {
  dp.validate();
  const double nd = static_cast<double>(setup.n);
  // eps1 = (omega_h / n) T1, so omega_h follows from either filter constant.
  const double omega_h = dp.eps1 * nd / setup.t1();
  return {omega_h, dp.gamma * omega_h / nd};
}

}  // namespace pllid
