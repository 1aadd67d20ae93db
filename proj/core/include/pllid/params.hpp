#pragma once

namespace pllid {

/// Circuit-level description of one generator regime.
///
/// Frequencies of the reference generator and the free-running VCO are cyclic
/// (Hz); the hold band is angular (rad/s). Filter time constants are
/// T1 = r1 * c1 and T2 = r2 * c2.
struct PhysicalSetup {
  double omega_rg = 0.0;  // Hz
  int m = 1;              // reference divider
  double omega_0 = 0.0;   // Hz
  int n = 1;              // VCO divider
  double omega_h = 0.0;   // rad/s
  double r1 = 0.0;        // Ohm
  double c1 = 0.0;        // F
  double r2 = 0.0;        // Ohm
  double c2 = 0.0;        // F

  double t1() const { return r1 * c1; }
  double t2() const { return r2 * c2; }

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

/// Model-space parameters of the third-order loop equations.
struct DimensionlessParams {
  double eps1 = 1.0;
  double eps2 = 1.0;
  double gamma = 0.0;     // signed detuning
  double t_renorm = 1.0;  // rad/s, converts laboratory seconds to model time

  void validate() const;
};

/// Effective coefficients of the reduced equation: alpha0 = gamma/(eps1 eps2),
/// alpha1 = -(eps1 + eps2)/(eps1 eps2).
struct AlphaPair {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
};

DimensionlessParams to_dimensionless(const PhysicalSetup& setup);

AlphaPair effective_params(const DimensionlessParams& dp);

/// Recovers the hold band and the angular detuning (2pi(f_rg/m - f_0/n))
/// from dimensionless parameters, given the setup's filter and dividers.
struct PhysicalRecovery {
  double omega_h = 0.0;
  double detuning = 0.0;  // rad/s
};

PhysicalRecovery invert_dimensionless(const DimensionlessParams& dp, const PhysicalSetup& setup);

}  // namespace pllid
