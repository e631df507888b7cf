#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsb/config.hpp"
#include "fsb/diagnostics.hpp"

namespace fsb {

/// Fills residual_26 / residual_27 for every record whose neighbours are
/// uniformly spaced; the rest stay NaN.
void fill_identity_residuals(std::vector<DiagnosticsRecord> &records);

struct VerdictInputs {
  double A = 0.0; // L(0)
  double c1 = 0.0;
  bool breakdown = false;
  Tolerances tol;
};

/// Pass/fail of every recorded-data check plus the worst normalized value
/// seen. std::nullopt marks a skipped check.
struct Verdicts {
  std::size_t n_records = 0;

  bool riccati_skipped = false;
  std::optional<bool> riccati_dominated;
  double worst_riccati_margin = kNaN; // min (L - envelope) / max(1, L^2)

  std::optional<bool> derivative_inequality_held;
  std::string derivative_status; // "ok" or "insufficient records"
  double worst_derivative_margin = kNaN; // min (L' - L^2/c1) / max(L^2, tiny)
  double worst_slack_28 = kNaN;          // min slack / scale
  double worst_riccati_slack = kNaN;

  bool pressure_positive = true;
  double worst_pressure_margin = kNaN; // min p_min / max(1, max|p|)

  std::optional<bool> identities_converged;
  double worst_identity_26 = kNaN; // max residual / scale
  double worst_identity_27 = kNaN;

  bool schwarz_held = true;
  double worst_schwarz_vol = kNaN;
  double worst_schwarz_wall = kNaN;

  bool energy_conserved = true;
  double max_energy_drift = 0.0;
  bool area_conserved = true;
  double max_area_drift = 0.0;

  bool all_passed() const;
};

Verdicts evaluate_verdicts(std::span<const DiagnosticsRecord> records, const VerdictInputs &in);

} // namespace fsb
