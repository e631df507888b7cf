#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsb/breakdown.hpp"
#include "fsb/config.hpp"
#include "fsb/diagnostics.hpp"
#include "fsb/verdicts.hpp"

namespace fsb {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitBadInput = 2, kExitSolverFailure = 3 };

inline constexpr const char *kDiagnosticsHeader =
    "t,L,volume_part,wall_part,envelope,residual_26,residual_27,slack_28,schwarz_vol,schwarz_wall,riccati_slack,"
    "p_min,wall_p_integral,energy,area,dt";
inline constexpr const char *kAuxHeader = "t,u1_sq,wall_u2_sq,p_volume,p_abs_max,corner_residual";

struct SimulationResult {
  std::vector<DiagnosticsRecord> records;
  std::vector<InterfaceCurve> snapshots; // one per record
  Verdicts verdicts;

  double A_quadrature = kNaN; // NaN for curve input
  double A_bem = kNaN;
  double A_relative_difference = kNaN;
  bool A_agreement = true;
  double c1 = kNaN;
  double T_star = kNaN; // NaN unless A > 0
  std::optional<BreakdownSignal> breakdown;
  std::optional<bool> bound_held;
  double t_final = 0.0;
  std::size_t steps = 0;
  double max_flux_imbalance = 0.0; // max |net flux| / scale over all solves
  bool flux_compatible = true;
  double initial_corner_residual = 0.0;
  std::string undiagnosed_failure; // non-empty -> exit 3

  bool all_checks_passed() const;
  int exit_code() const;
};

/// Initial state and both evaluations of A. Throws ArgumentError when the
/// input is unusable (geometry, corner conditions, A disagreement).
FlowState make_initial_state(const RunConfig &config, double *A_quadrature);

/// Runs the time loop in memory. Bad input throws ArgumentError; failures
/// that are not breakdowns are captured in undiagnosed_failure.
SimulationResult run_simulation(const RunConfig &config, std::ostream *progress = nullptr);

/// Flat report JSON (fixed key order, 17 significant digits).
std::string report_json(const RunConfig &config, const SimulationResult &result);
std::string diagnostics_csv(const std::vector<DiagnosticsRecord> &records);
std::string aux_csv(const std::vector<DiagnosticsRecord> &records);
std::string snapshot_csv(const InterfaceCurve &curve);

/// Runs and writes diagnostics.csv, aux.csv, snapshots/NNNN.csv,
/// report.json and config.json under out_dir. Returns the exit code.
int simulate(const RunConfig &config, const std::filesystem::path &out_dir, std::ostream &log, bool quiet);

struct BemErrorRow {
  int mode = 0;
  std::size_t panels = 0; // per side
  double error = 0.0;     // relative L-infinity error of the mixed problem
  double order = kNaN;    // against the previous row of the same mode
};

struct BemValidation {
  std::vector<BemErrorRow> rows;
  double constant_error = 0.0;
  double min_order = kNaN;
  bool monotone = true;
  bool passed = false;
};

/// Analytic modes cos(k pi x1) cosh(k pi x2) on the unit square, surface
/// values from the markers, walls Neumann.
BemValidation run_bem_validation(const ValidationSpec &spec);
int validate_bem(const RunConfig &config, std::ostream &log);

/// Re-derives all verdicts from the CSV files of a run directory and
/// compares them with report.json.
int verify_identities(const std::filesystem::path &run_dir, std::ostream &log);

/// Interface CSV with header alpha,x1,x2,phi.
FlowState load_curve_file(const std::filesystem::path &path);

} // namespace fsb
