#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pllid/least_squares.hpp"
#include "pllid/params.hpp"

namespace pllid {

struct ProvenanceInfo {
  std::string tool_version;
  std::string input_file;
  std::string input_hash;
  std::string config_file;
  std::string config_hash;
  std::string command_line;
  std::string method;
  std::string time_scale;
  int k_order = 1;
  std::optional<double> b_trial;  // fixed shift; empty in scan mode
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<double> grid_step;
  std::optional<double> cutoff;   // empty when no smoothing was applied
  std::optional<double> y_floor;
  std::optional<double> observation_a;
};

struct Report {
  std::string regime;
  DimensionlessParams dimensionless;
  AlphaPair expected;
  FitResult estimated;
  std::optional<double> chosen_b;
  std::optional<std::size_t> slope_index;
  std::optional<double> rel_error_beta0;
  std::optional<double> rel_error_beta1;
  ProvenanceInfo provenance;
};

/// |estimate - expected| / |expected|, empty when expected is zero.
std::optional<double> relative_error(double estimate, double expected);

/// Fills expected values and relative errors from the dimensionless params.
void compare_with_expected(Report& report);

/// Single JSON document; numbers keep full double precision.
std::string to_json(const Report& report);

}  // namespace pllid
