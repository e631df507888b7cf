#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fsb/diagnostics.hpp"
#include "fsb/flow.hpp"
#include "fsb/initial_data.hpp"
#include "fsb/pressure.hpp"

namespace fsb {

struct InitialDataSpec {
  enum class Kind { Reference, Modes, Curve };
  Kind kind = Kind::Reference;
  double amplitude = 1.0;        // reference
  std::vector<ModeTerm> modes;   // modes
  std::filesystem::path curve;   // curve: CSV alpha,x1,x2,phi
};

struct Tolerances {
  double area_tol = 1e-3;
  double energy_tol = 1e-2;
  double ident_tol = 5e-2;
  double positivity_tol = 1e-3;
  double riccati_tol = 1e-2;
  double check_tol = 1e-3;
  double derivative_tol = 1e-2;
  double A_agreement_tol = 1e-3;
  double bound_slack = 0.05;
  double flux_tol = 1e-8;
  double corner_tol = 5e-2;
};

struct ValidationSpec {
  std::vector<int> modes{1, 2};
  std::vector<std::size_t> panel_counts{32, 64, 128, 256};
  double min_order = 1.0;
  double constant_tol = 1e-8;
  /// Test hook: -1 flips the double-layer kernel.
  double double_layer_sign = 1.0;
};

struct RunConfig {
  InitialDataSpec initial;
  std::size_t n_markers = 64;
  std::size_t wall_panels_per_side = 32;
  TimestepLimits steps;
  double record_dt = 2.5e-4;
  double t_end_cap = 1.0;
  int redistribution_period = 5; // 0 disables
  LatticeSpec lattice;
  double near_field_factor = kDefaultNearFieldFactor;
  int quadrature_order = 16;
  Tolerances tol;
  DetectorThresholds detector;
  ValidationSpec validation;
  std::filesystem::path output_dir = "run";
  std::uint64_t rng_seed = 0;

  /// Throws ArgumentError on any violated invariant.
  void validate() const;
};

/// Parses a JSON config; missing keys take defaults, unknown keys are errors.
/// Relative curve paths resolve against base_dir.
RunConfig parse_config(std::string_view json_text, const std::filesystem::path &base_dir = {});
RunConfig load_config(const std::filesystem::path &path);
/// Fully resolved config as JSON text (every key present).
std::string config_to_json(const RunConfig &config);

} // namespace fsb
