#include "fsb/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "fsb/bem.hpp"
#include "fsb/errors.hpp"
#include "fsb/initial_data.hpp"

namespace fsb {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Flat JSON object with keys in insertion order.
class FlatJson {
public:
  void add(const std::string &key, double v) { put(key, std::isfinite(v) ? num(v) : "null"); }
  void add(const std::string &key, bool v) { put(key, v ? "true" : "false"); }
  void add(const std::string &key, const std::optional<bool> &v) {
    put(key, v ? (*v ? "true" : "false") : "null");
  }
  void add(const std::string &key, std::size_t v) { put(key, std::to_string(v)); }
  void add(const std::string &key, int v) { put(key, std::to_string(v)); }
  void add(const std::string &key, const std::string &v) { put(key, nlohmann::json(v).dump()); }
  void add(const std::string &key, const char *v) { add(key, std::string(v)); }
  void null(const std::string &key) { put(key, "null"); }
  std::string str() const {
    std::string out = "{\n";
    for (std::size_t i = 0; i < items_.size(); ++i) {
      out += "  " + nlohmann::json(items_[i].first).dump() + ": " + items_[i].second;
      out += i + 1 < items_.size() ? ",\n" : "\n";
    }
    return out + "}\n";
  }

private:
  void put(const std::string &key, std::string v) { items_.emplace_back(key, std::move(v)); }
  std::vector<std::pair<std::string, std::string>> items_;
};

std::vector<std::vector<double>> read_csv(const fs::path &path, const std::string &header) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ArgumentError(path.string() + ": unexpected header '" + line + "'");
  const auto ncols = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',') + 1);
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char *end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size())
        throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != ncols)
      throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(ncols) +
                          " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << text;
}

std::optional<BreakdownSignal> classify_solve_failure(const FlowState &st) {
  try {
    (void)st;
    throw;
  } catch (const SelfIntersectionError &e) {
    bool bottom = false;
    for (const auto &p : st.curve.points()) bottom = bottom || p.y <= 0.0;
    return BreakdownSignal{st.t, bottom ? BreakdownKind::BottomContact : BreakdownKind::SelfIntersection, e.what()};
  } catch (const GeometryError &e) {
    return BreakdownSignal{st.t, BreakdownKind::MarkerCollision, e.what()};
  } catch (const SingularMatrixError &e) {
    return BreakdownSignal{st.t, BreakdownKind::SolverFailure, e.what()};
  } catch (...) {
    return std::nullopt;
  }
}

const char *initial_kind(const InitialDataSpec &s) {
  switch (s.kind) {
  case InitialDataSpec::Kind::Reference: return "reference";
  case InitialDataSpec::Kind::Modes: return "modes";
  case InitialDataSpec::Kind::Curve: return "curve";
  }
  return "";
}

} // namespace

FlowState load_curve_file(const fs::path &path) {
  const auto rows = read_csv(path, "alpha,x1,x2,phi");
  if (rows.size() < 9) throw ArgumentError(path.string() + ": need at least 9 markers");
  std::vector<double> alpha, phi;
  std::vector<Vec2> pts;
  for (const auto &r : rows) {
    alpha.push_back(r[0]);
    pts.push_back({r[1], r[2]});
    phi.push_back(r[3]);
  }
  try {
    FlowState s{0.0, InterfaceCurve(std::move(alpha), std::move(pts)), std::move(phi)};
    s.validate();
    return s;
  } catch (const GeometryError &e) {
    throw ArgumentError(path.string() + ": " + e.what());
  }
}

FlowState make_initial_state(const RunConfig &cfg, double *A_quadrature) {
  if (A_quadrature) *A_quadrature = kNaN;
  if (cfg.initial.kind == InitialDataSpec::Kind::Curve) return load_curve_file(cfg.initial.curve);
  ModePotential pot = cfg.initial.kind == InitialDataSpec::Kind::Reference
                          ? make_reference_data(cfg.initial.amplitude)
                          : ModePotential(cfg.initial.modes);
  require_corner_compatible(pot);
  if (A_quadrature) *A_quadrature = initial_A(pot, cfg.quadrature_order);
  return sample_initial_state(pot, cfg.n_markers);
}

bool SimulationResult::all_checks_passed() const {
  return verdicts.all_passed() && A_agreement && flux_compatible && bound_held.value_or(true);
}

int SimulationResult::exit_code() const {
  if (!undiagnosed_failure.empty()) return kExitSolverFailure;
  return all_checks_passed() ? kExitOk : kExitCheckFailed;
}

SimulationResult run_simulation(const RunConfig &cfg, std::ostream *progress) {
  cfg.validate();
  SimulationResult R;
  double Aq = kNaN;
  FlowState st = make_initial_state(cfg, &Aq);
  const std::size_t w = cfg.wall_panels_per_side;

  FlowSolve solve;
  try {
    solve = solve_flow(st, w);
  } catch (const Error &e) {
    throw ArgumentError(std::string("initial solve failed: ") + e.what());
  }
  R.A_bem = virial_L(solve).L;
  R.A_quadrature = Aq;
  R.initial_corner_residual = solve.corner_residual;
  if (cfg.initial.kind == InitialDataSpec::Kind::Curve && !(solve.corner_residual <= cfg.tol.corner_tol))
    throw ArgumentError("initial data violates the corner conditions (relative corner velocity " +
                        num(solve.corner_residual) + ")");
  if (!std::isnan(Aq)) {
    const double scale = std::max(std::abs(Aq), std::abs(R.A_bem));
    R.A_relative_difference = scale > 0.0 ? std::abs(Aq - R.A_bem) / scale : 0.0;
    R.A_agreement = R.A_relative_difference <= cfg.tol.A_agreement_tol;
    if (!R.A_agreement)
      throw ArgumentError("refusing to run: the two evaluations of A disagree (quadrature " + num(Aq) +
                          ", boundary " + num(R.A_bem) + ")");
  }
  R.c1 = constant_c1(solve.mesh());
  const double A = R.A_bem;
  if (A > 0.0) R.T_star = blowup_bound(A, R.c1);

  RecordOptions ro;
  ro.lattice = cfg.lattice;
  ro.near_field_factor = cfg.near_field_factor;
  ro.A = A;
  ro.c1 = R.c1;
  const double spacing0 = st.curve.min_spacing();
  const double cap = cfg.t_end_cap;
  std::size_t k = 0;

  try {
    while (true) {
      const auto fb = flux_balance(solve.mesh(), solve.phi);
      R.max_flux_imbalance = std::max(R.max_flux_imbalance, std::abs(fb.net) / std::max(fb.scale, 1e-300));

      const bool at_cap = st.t >= cap;
      const bool on_grid = st.t == static_cast<double>(k) * cfg.record_dt;
      double dt = kNaN;
      bool collapsed = false;
      std::string collapse_detail;
      try {
        dt = adaptive_dt(st, solve.marker_velocity, cfg.steps);
      } catch (const BreakdownError &e) {
        collapsed = true;
        collapse_detail = e.what();
      }
      if (on_grid || at_cap) {
        DiagnosticsRecord rec = make_record(st, solve, ro);
        rec.dt = dt;
        R.records.push_back(rec);
        R.snapshots.push_back(st.curve);
        if (on_grid) ++k;
        if (progress)
          *progress << "t=" << rec.t << " L=" << rec.L << " p_min=" << rec.p_min << " energy=" << rec.energy
                    << " dt=" << rec.dt << "\n";
      }
      if (at_cap) break;

      BreakdownContext ctx{spacing0, virial_L(solve).L, collapsed, collapse_detail};
      if (auto bd = detect_breakdown(st, ctx, cfg.detector)) {
        R.breakdown = bd;
        break;
      }

      const double target = std::min(static_cast<double>(k) * cfg.record_dt, cap);
      const double h = target - st.t;
      bool snap = false;
      if (dt >= h) {
        dt = h;
        snap = true;
      } else if (dt > 0.5 * h) {
        dt = 0.5 * h;
      }

      bool first = true;
      DerivativeFn rhs = [&](const FlowState &s) {
        if (first) {
          first = false;
          return state_derivative(solve);
        }
        return state_derivative(s, w);
      };
      FlowState next;
      try {
        next = rk4_step(st, dt, rhs);
      } catch (const BreakdownError &e) {
        R.breakdown = e.signal();
        break;
      }
      if (snap) next.t = target;
      ++R.steps;

      BreakdownContext geo{spacing0, 0.0, false, {}};
      if (auto bd = detect_breakdown(next, geo, cfg.detector)) {
        R.breakdown = bd;
        st = std::move(next);
        break;
      }
      if (cfg.redistribution_period > 0 && R.steps % static_cast<std::size_t>(cfg.redistribution_period) == 0) {
        try {
          next = redistribute_markers(next);
        } catch (const GeometryError &e) {
          R.breakdown = BreakdownSignal{next.t, BreakdownKind::SelfIntersection,
                                        std::string("redistribution: ") + e.what()};
          st = std::move(next);
          break;
        }
      }
      st = std::move(next);
      try {
        solve = solve_flow(st, w);
      } catch (const Error &) {
        auto bd = classify_solve_failure(st);
        if (!bd) throw;
        R.breakdown = bd;
        break;
      }
    }
  } catch (const std::exception &e) {
    R.undiagnosed_failure = e.what();
  }
  R.t_final = st.t;

  fill_identity_residuals(R.records);
  VerdictInputs vin;
  vin.A = A;
  vin.c1 = R.c1;
  vin.breakdown = R.breakdown.has_value();
  vin.tol = cfg.tol;
  R.verdicts = evaluate_verdicts(R.records, vin);
  R.flux_compatible = R.max_flux_imbalance <= cfg.tol.flux_tol;
  if (A > 0.0) {
    const double limit = R.T_star * (1.0 + cfg.tol.bound_slack);
    if (R.breakdown)
      R.bound_held = R.breakdown->t_break <= limit;
    else if (R.t_final >= limit)
      R.bound_held = false;
  }
  return R;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord> &records) {
  std::string out = std::string(kDiagnosticsHeader) + "\n";
  for (const auto &r : records) {
    const double cols[] = {r.t,           r.L,           r.volume_part, r.wall_part,     r.envelope, r.residual_26,
                           r.residual_27, r.slack_28,    r.schwarz_vol, r.schwarz_wall,  r.riccati_slack,
                           r.p_min,       r.wall_p_integral, r.energy,  r.area,          r.dt};
    for (std::size_t i = 0; i < std::size(cols); ++i) out += (i ? "," : "") + num(cols[i]);
    out += "\n";
  }
  return out;
}

std::string aux_csv(const std::vector<DiagnosticsRecord> &records) {
  std::string out = std::string(kAuxHeader) + "\n";
  for (const auto &r : records) {
    const double cols[] = {r.t, r.u1_sq, r.wall_u2_sq, r.p_volume, r.p_abs_max, r.corner_residual};
    for (std::size_t i = 0; i < std::size(cols); ++i) out += (i ? "," : "") + num(cols[i]);
    out += "\n";
  }
  return out;
}

std::string snapshot_csv(const InterfaceCurve &curve) {
  std::string out = "alpha,x1,x2\n";
  for (std::size_t i = 0; i < curve.size(); ++i)
    out += num(curve.alpha()[i]) + "," + num(curve[i].x) + "," + num(curve[i].y) + "\n";
  return out;
}

std::string report_json(const RunConfig &cfg, const SimulationResult &R) {
  const Verdicts &v = R.verdicts;
  FlatJson j;
  j.add("A", R.A_bem);
  j.add("A_quadrature", R.A_quadrature);
  j.add("A_bem", R.A_bem);
  j.add("A_relative_difference", R.A_relative_difference);
  j.add("A_agreement", R.A_agreement);
  j.add("c1", R.c1);
  j.add("T_star", R.T_star);
  if (R.breakdown) {
    j.add("T_break", R.breakdown->t_break);
    j.add("breakdown_kind", std::string(to_string(R.breakdown->kind)));
    j.add("breakdown_detail", R.breakdown->detail);
  } else {
    j.null("T_break");
    j.null("breakdown_kind");
    j.null("breakdown_detail");
  }
  j.add("terminated_by", !R.undiagnosed_failure.empty() ? "solver_failure"
                         : R.breakdown                  ? "breakdown"
                                                        : "t_end_cap");
  if (!R.undiagnosed_failure.empty()) j.add("failure_detail", R.undiagnosed_failure);
  j.add("t_final", R.t_final);
  j.add("steps", R.steps);
  j.add("n_records", v.n_records);
  j.add("riccati_skipped", v.riccati_skipped);
  j.add("riccati_dominated", v.riccati_dominated);
  j.add("worst_riccati_margin", v.worst_riccati_margin);
  j.add("bound_held", R.bound_held);
  j.add("bound_ratio", R.breakdown && R.T_star > 0.0 ? R.breakdown->t_break / R.T_star : kNaN);
  j.add("derivative_inequality_held", v.derivative_inequality_held);
  j.add("derivative_status", v.derivative_status);
  j.add("worst_derivative_margin", v.worst_derivative_margin);
  j.add("worst_slack_28", v.worst_slack_28);
  j.add("worst_riccati_slack", v.worst_riccati_slack);
  j.add("pressure_positive", v.pressure_positive);
  j.add("worst_pressure_margin", v.worst_pressure_margin);
  j.add("identities_converged", v.identities_converged);
  j.add("worst_identity_26", v.worst_identity_26);
  j.add("worst_identity_27", v.worst_identity_27);
  j.add("schwarz_held", v.schwarz_held);
  j.add("worst_schwarz_vol", v.worst_schwarz_vol);
  j.add("worst_schwarz_wall", v.worst_schwarz_wall);
  j.add("energy_conserved", v.energy_conserved);
  j.add("max_energy_drift", v.max_energy_drift);
  j.add("area_conserved", v.area_conserved);
  j.add("max_area_drift", v.max_area_drift);
  j.add("flux_compatible", R.flux_compatible);
  j.add("max_flux_imbalance", R.max_flux_imbalance);
  j.add("initial_corner_residual", R.initial_corner_residual);
  j.add("initial_data", initial_kind(cfg.initial));
  j.add("n_markers", R.snapshots.empty() ? cfg.n_markers : R.snapshots.front().size());
  j.add("wall_panels_per_side", cfg.wall_panels_per_side);
  j.add("record_dt", cfg.record_dt);
  j.add("t_end_cap", cfg.t_end_cap);
  j.add("cfl", cfg.steps.cfl);
  j.add("dt_min", cfg.steps.dt_min);
  j.add("dt_max", cfg.steps.dt_max);
  j.add("redistribution_period", cfg.redistribution_period);
  j.add("lattice_nx", cfg.lattice.nx);
  j.add("lattice_ny", cfg.lattice.ny);
  j.add("rng_seed", static_cast<std::size_t>(cfg.rng_seed));
  j.add("all_checks_passed", R.all_checks_passed());
  return j.str();
}

int simulate(const RunConfig &cfg, const fs::path &out_dir, std::ostream &log, bool quiet) {
  SimulationResult R;
  try {
    R = run_simulation(cfg, quiet ? nullptr : &log);
  } catch (const ArgumentError &e) {
    log << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error &e) {
    log << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  try {
    fs::create_directories(out_dir / "snapshots");
    for (const auto &entry : fs::directory_iterator(out_dir / "snapshots"))
      if (entry.path().extension() == ".csv") fs::remove(entry.path());
    write_file(out_dir / "diagnostics.csv", diagnostics_csv(R.records));
    write_file(out_dir / "aux.csv", aux_csv(R.records));
    for (std::size_t i = 0; i < R.snapshots.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "%04zu.csv", i);
      write_file(out_dir / "snapshots" / name, snapshot_csv(R.snapshots[i]));
    }
    write_file(out_dir / "report.json", report_json(cfg, R));
    write_file(out_dir / "config.json", config_to_json(cfg));
  } catch (const std::exception &e) {
    log << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  if (!quiet) {
    if (R.breakdown)
      log << "breakdown (" << to_string(R.breakdown->kind) << ") at t=" << num(R.breakdown->t_break) << ": "
          << R.breakdown->detail << "\n";
    else if (R.undiagnosed_failure.empty())
      log << "reached t_end_cap=" << num(cfg.t_end_cap) << "\n";
    if (R.T_star > 0.0) log << "c1/A=" << num(R.T_star) << "\n";
  }
  if (!R.undiagnosed_failure.empty()) log << "solver failure: " << R.undiagnosed_failure << "\n";
  else if (!R.all_checks_passed()) log << "one or more checks failed; see report.json\n";
  return R.exit_code();
}

BemValidation run_bem_validation(const ValidationSpec &spec) {
  BemValidation out;
  constexpr double pi = std::numbers::pi;
  auto solver_for = [&](std::size_t n) {
    BoundaryMesh mesh = build_boundary_mesh(InterfaceCurve::flat(n + 1), n);
    auto infl = kernels::assemble(mesh);
    if (spec.double_layer_sign < 0.0) {
      for (std::size_t i = 0; i < mesh.size(); ++i)
        for (std::size_t j = 0; j < mesh.size(); ++j) {
          infl.double_layer(i, j) = -infl.double_layer(i, j);
          infl.double_layer_moment(i, j) = -infl.double_layer_moment(i, j);
        }
    }
    return MixedSolver(std::move(mesh), std::move(infl));
  };
  auto error_for = [&](const MixedSolver &solver, auto value, auto surface_flux) {
    const BoundaryMesh &mesh = solver.mesh();
    const InterfaceCurve curve = InterfaceCurve::flat(mesh.surface_count() + 1);
    std::vector<double> nodal;
    for (const auto &p : curve.points()) nodal.push_back(value(p));
    const std::vector<double> neumann(mesh.wall_count(), 0.0);
    const CauchyData d = solver.solve(SurfaceTrace::from_nodes(mesh, nodal), neumann);
    double eq = 0.0, sq = 0.0, ev = 0.0, sv = 0.0;
    for (std::size_t j = 0; j < mesh.size(); ++j) {
      const Panel &p = mesh[j];
      if (p.kind == BcKind::DirichletSurface) {
        const double exact = surface_flux(p.mid);
        eq = std::max(eq, std::abs(d.flux[j] - exact));
        sq = std::max(sq, std::abs(exact));
      } else {
        const double exact = value(p.mid);
        ev = std::max(ev, std::abs(d.value[j] - exact));
        sv = std::max(sv, std::abs(exact));
      }
    }
    return std::max(sq > 0.0 ? eq / sq : eq, sv > 0.0 ? ev / sv : ev);
  };

  for (int k : spec.modes) {
    const double kp = k * pi;
    auto value = [kp](Vec2 x) { return std::cos(kp * x.x) * std::cosh(kp * x.y); };
    auto flux = [kp](Vec2 x) { return kp * std::cos(kp * x.x) * std::sinh(kp * x.y); };
    for (std::size_t i = 0; i < spec.panel_counts.size(); ++i) {
      BemErrorRow row;
      row.mode = k;
      row.panels = spec.panel_counts[i];
      row.error = error_for(solver_for(row.panels), value, flux);
      if (i > 0) {
        const auto &prev = out.rows.back();
        row.order = std::log(prev.error / row.error) / std::log(double(row.panels) / double(prev.panels));
        if (!(row.error < prev.error)) out.monotone = false;
        out.min_order = std::isnan(out.min_order) ? row.order : std::min(out.min_order, row.order);
      }
      out.rows.push_back(row);
    }
  }
  {
    auto value = [](Vec2) { return 1.0; };
    auto flux = [](Vec2) { return 0.0; };
    out.constant_error = error_for(solver_for(spec.panel_counts.front()), value, flux);
  }
  out.passed = out.monotone && out.min_order >= spec.min_order && out.constant_error <= spec.constant_tol;
  return out;
}

int validate_bem(const RunConfig &cfg, std::ostream &log) {
  BemValidation v;
  try {
    v = run_bem_validation(cfg.validation);
  } catch (const SingularMatrixError &e) {
    log << "validation failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error &e) {
    log << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  log << "mode  panels/side  rel_Linf_error           order\n";
  for (const auto &r : v.rows) {
    char line[128];
    std::snprintf(line, sizeof line, "%4d  %11zu  %-23s  %s\n", r.mode, r.panels, num(r.error).c_str(),
                  std::isnan(r.order) ? "-" : num(r.order).c_str());
    log << line;
  }
  log << "constant solution error: " << num(v.constant_error) << " (tol " << num(cfg.validation.constant_tol) << ")\n";
  log << "monotone: " << (v.monotone ? "yes" : "no") << ", min order: " << num(v.min_order) << " (required "
      << num(cfg.validation.min_order) << ")\n";
  log << (v.passed ? "PASS" : "FAIL") << "\n";
  return v.passed ? kExitOk : kExitCheckFailed;
}

int verify_identities(const fs::path &run_dir, std::ostream &log) {
  RunConfig cfg;
  nlohmann::json report;
  std::vector<DiagnosticsRecord> recs;
  try {
    cfg = load_config(run_dir / "config.json");
    std::ifstream rin(run_dir / "report.json");
    if (!rin) throw ArgumentError("cannot open " + (run_dir / "report.json").string());
    try {
      report = nlohmann::json::parse(rin);
    } catch (const nlohmann::json::exception &e) {
      throw ArgumentError(std::string("report.json: ") + e.what());
    }
    if (!report.is_object() || !report.contains("A") || !report.contains("c1") || !report["A"].is_number() ||
        !report["c1"].is_number())
      throw ArgumentError("report.json: missing A or c1");
    const auto diag = read_csv(run_dir / "diagnostics.csv", kDiagnosticsHeader);
    const auto aux = read_csv(run_dir / "aux.csv", kAuxHeader);
    if (diag.empty()) throw ArgumentError("diagnostics.csv has no records");
    if (aux.size() != diag.size()) throw ArgumentError("aux.csv and diagnostics.csv differ in length");
    for (std::size_t i = 0; i < diag.size(); ++i) {
      const auto &d = diag[i];
      const auto &a = aux[i];
      if (a[0] != d[0]) throw ArgumentError("aux.csv and diagnostics.csv disagree on t at row " + std::to_string(i + 1));
      DiagnosticsRecord r;
      r.t = d[0];
      r.L = d[1];
      r.volume_part = d[2];
      r.wall_part = d[3];
      r.envelope = d[4];
      r.slack_28 = d[7];
      r.schwarz_vol = d[8];
      r.schwarz_wall = d[9];
      r.riccati_slack = d[10];
      r.p_min = d[11];
      r.wall_p_integral = d[12];
      r.energy = d[13];
      r.area = d[14];
      r.dt = d[15];
      r.u1_sq = a[1];
      r.wall_u2_sq = a[2];
      r.p_volume = a[3];
      r.p_abs_max = a[4];
      r.corner_residual = a[5];
      recs.push_back(r);
    }
  } catch (const Error &e) {
    log << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  fill_identity_residuals(recs);
  VerdictInputs vin;
  vin.A = report["A"].get<double>();
  vin.c1 = report["c1"].get<double>();
  vin.breakdown = report.contains("breakdown_kind") && !report["breakdown_kind"].is_null();
  vin.tol = cfg.tol;
  const Verdicts v = evaluate_verdicts(recs, vin);

  bool failed = false;
  auto compare = [&](const char *name, const std::optional<bool> &mine) {
    std::optional<bool> theirs;
    if (report.contains(name) && report[name].is_boolean()) theirs = report[name].get<bool>();
    auto show = [](const std::optional<bool> &b) { return b ? (*b ? "true" : "false") : "skipped"; };
    const bool mismatch = mine && theirs && *mine != *theirs;
    log << name << ": " << show(mine) << " (report: " << show(theirs) << ")" << (mismatch ? "  MISMATCH" : "") << "\n";
    if (mismatch || (mine && !*mine)) failed = true;
  };
  log << "records: " << v.n_records << "\n";
  if (v.derivative_status != "ok") log << "derivative checks: " << v.derivative_status << "\n";
  if (v.riccati_skipped) log << "riccati checks: skipped (A <= 0)\n";
  compare("riccati_dominated", v.riccati_dominated);
  compare("derivative_inequality_held", v.derivative_inequality_held);
  compare("pressure_positive", v.pressure_positive);
  compare("identities_converged", v.identities_converged);
  compare("schwarz_held", v.schwarz_held);
  compare("energy_conserved", v.energy_conserved);
  compare("area_conserved", v.area_conserved);
  log << (failed ? "FAIL" : "PASS") << "\n";
  return failed ? kExitCheckFailed : kExitOk;
}

} // namespace fsb
