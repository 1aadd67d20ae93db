#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pllid/observation.hpp"
#include "pllid/params.hpp"

namespace pllid {

/// One regime: circuit values plus the observation transform.
///
/// On disk this is a flat `key = value` file. Required keys: omega_rg_hz, m,
/// omega_0_hz, n, omega_h_rad_s, r1_ohm, c1_f, r2_ohm, c2_f. Optional: name
/// (defaults to the file stem), obs_a, obs_b, notes. `#` starts a comment.
struct RegimeConfig {
  std::string name;
  PhysicalSetup physical;
  ObservationModel observation;
  std::string notes;
};

/// `origin` labels error messages (usually the file path).
RegimeConfig parse_regime_config(std::string_view text, const std::string& origin,
                                 const std::string& default_name = {});

RegimeConfig load_regime_config(const std::filesystem::path& path);

/// A single file, or every *.cfg in a directory sorted by file name.
/// Names must be unique within the bundle.
std::vector<RegimeConfig> load_regime_bundle(const std::filesystem::path& path);

std::string format_regime_config(const RegimeConfig& cfg);

/// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string file_hash(const std::filesystem::path& path);

}  // namespace pllid
