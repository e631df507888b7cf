#include "fsb/verdicts.hpp"

#include <algorithm>
#include <cmath>

#include "fsb/errors.hpp"

namespace fsb {

namespace {

double ratio(double value, double scale) { return scale > 0.0 ? value / scale : (value < 0.0 ? -1.0 : 0.0); }

void take_min(double &acc, double v) { acc = std::isnan(acc) ? v : std::min(acc, v); }
void take_max(double &acc, double v) { acc = std::isnan(acc) ? v : std::max(acc, v); }

} // namespace

void fill_identity_residuals(std::vector<DiagnosticsRecord> &records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].residual_26 = kNaN;
    records[i].residual_27 = kNaN;
    if (i == 0 || i + 1 == records.size()) continue;
    try {
      records[i].residual_26 = identity_residual_26(records[i - 1], records[i], records[i + 1]);
      records[i].residual_27 = identity_residual_27(records[i - 1], records[i], records[i + 1]);
    } catch (const ArgumentError &) {
      // non-uniform neighbours (final record at the cap)
    }
  }
}

bool Verdicts::all_passed() const {
  auto ok = [](const std::optional<bool> &b) { return !b.has_value() || *b; };
  return ok(riccati_dominated) && ok(derivative_inequality_held) && pressure_positive && ok(identities_converged) &&
         schwarz_held && energy_conserved && area_conserved;
}

Verdicts evaluate_verdicts(std::span<const DiagnosticsRecord> recs, const VerdictInputs &in) {
  Verdicts v;
  v.n_records = recs.size();
  if (recs.empty()) return v;
  const Tolerances &tol = in.tol;

  // Conservation: all records except the last one before a breakdown.
  const std::size_t n_cons = in.breakdown && recs.size() > 1 ? recs.size() - 1 : recs.size();
  const double area0 = recs[0].area, energy0 = recs[0].energy;
  for (std::size_t i = 0; i < n_cons; ++i) {
    const double da = std::abs(recs[i].area - area0) / std::abs(area0);
    const double de = energy0 > 0.0 ? std::abs(recs[i].energy - energy0) / energy0 : std::abs(recs[i].energy);
    v.max_area_drift = std::max(v.max_area_drift, da);
    v.max_energy_drift = std::max(v.max_energy_drift, de);
  }
  v.area_conserved = v.max_area_drift <= tol.area_tol;
  v.energy_conserved = v.max_energy_drift <= tol.energy_tol;

  bool slack_ok = true;
  for (const auto &r : recs) {
    const double pm = r.p_min / std::max(1.0, r.p_abs_max);
    take_min(v.worst_pressure_margin, pm);
    if (!(pm >= -tol.positivity_tol)) v.pressure_positive = false;

    const auto s = inequality_checks(r, in.c1);
    const double s28 = ratio(s.slack_28, s.scale_28), sv = ratio(s.schwarz_vol, s.scale_vol),
                 sw = ratio(s.schwarz_wall, s.scale_wall), sr = ratio(s.riccati, s.scale_riccati);
    take_min(v.worst_slack_28, s28);
    take_min(v.worst_riccati_slack, sr);
    take_min(v.worst_schwarz_vol, sv);
    take_min(v.worst_schwarz_wall, sw);
    if (!(sv >= -tol.check_tol) || !(sw >= -tol.check_tol)) v.schwarz_held = false;
    if (!(s28 >= -tol.check_tol) || !(sr >= -tol.check_tol)) slack_ok = false;
  }

  // Identities and the centered L' need interior records.
  std::size_t interior = 0;
  bool ident_ok = true, deriv_ok = true;
  for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
    const auto &r = recs[i];
    if (std::isnan(r.residual_26) || std::isnan(r.residual_27)) continue;
    ++interior;
    const double r26 = ratio(r.residual_26, identity_scale_26(r));
    const double r27 = ratio(r.residual_27, identity_scale_27(r));
    take_max(v.worst_identity_26, r26);
    take_max(v.worst_identity_27, r27);
    if (!(r26 <= tol.ident_tol) || !(r27 <= tol.ident_tol)) ident_ok = false;

    const double dL = (recs[i + 1].L - recs[i - 1].L) / (recs[i + 1].t - recs[i - 1].t);
    const double L2 = r.L * r.L;
    const double margin = (dL - L2 / in.c1) / std::max(L2, 1e-300);
    take_min(v.worst_derivative_margin, L2 > 0.0 ? margin : (dL >= 0.0 ? 0.0 : -1.0));
    if (!(dL >= L2 / in.c1 - tol.derivative_tol * L2)) deriv_ok = false;
  }
  if (interior == 0) {
    v.derivative_status = "insufficient records";
    v.identities_converged.reset();
    v.derivative_inequality_held = slack_ok ? std::optional<bool>{} : std::optional<bool>{false};
  } else {
    v.derivative_status = "ok";
    v.identities_converged = ident_ok;
    v.derivative_inequality_held = deriv_ok && slack_ok;
  }

  // Riccati comparison only for A > 0.
  v.riccati_skipped = !(in.A > 0.0);
  if (!v.riccati_skipped) {
    bool dominated = true;
    const double t_star = in.c1 / in.A;
    for (const auto &r : recs) {
      if (!(r.t < t_star)) continue;
      const double env = riccati_envelope(in.A, in.c1, r.t);
      const double m = (r.L - env) / std::max(1.0, r.L * r.L);
      take_min(v.worst_riccati_margin, m);
      if (!(m >= -tol.riccati_tol)) dominated = false;
    }
    v.riccati_dominated = dominated;
  }
  return v;
}

} // namespace fsb
