#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ribbon_klein/barrier.hpp"
#include "ribbon_klein/constants.hpp"

namespace rk {

// One batch run. Lengths in multiples of a0 where suffixed _a0, angles in
// degrees at this boundary (radians internally).
struct RunConfig {
  int N = 198;
  int n_modes = 100;
  double delta_A = 2.0;
  double total_length_a0 = 260.0;
  double D_a0 = 60.0;
  double d_a0 = 30.0;
  double V0_eV = 0.5;
  double theta_deg = 0.0;
  double eta_eV = 0.0;
  double E_min_eV = 0.0;
  double E_max_eV = 0.4;
  int E_steps = 400;
  double mu_eV = 0.2;
  double temperature_K = 0.0;
  int quad_pts_per_a0 = 4;
  int workers = 0;  // 0 = auto

  double theta_rad() const;
  BarrierSpec barrier(const PhysicalConstants& pc = {}) const;
};

// Line-oriented `key = value` text; '#' starts a comment. Unknown keys and
// malformed lines raise ParseError with the line number; violated invariants
// raise ParseError with line 0. The parsed config is validated.
RunConfig parse_config(const std::string& text);

// Invariant check only (footprint rule included). Throws ParseError.
void validate_config(const RunConfig& cfg, const PhysicalConstants& pc = {});

// Canonical (key, value) echo with round-trip-exact number formatting.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

}  // namespace rk
