#include "fsb/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fsb/errors.hpp"

namespace fsb {

using nlohmann::json;

namespace {

void reject_unknown(const json &obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ArgumentError("config: '" + std::string(where) + "' must be an object");
  const std::set<std::string_view> keys(allowed);
  for (const auto &item : obj.items())
    if (!keys.count(item.key()))
      throw ArgumentError("config: unknown key '" + item.key() + "' in " + std::string(where));
}

template <class T> void read(const json &obj, const char *key, T &out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw ArgumentError("");
      out = it->get<double>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw ArgumentError("");
      if constexpr (std::is_unsigned_v<T>) {
        if (it->get<long long>() < 0) throw ArgumentError("");
      }
      out = it->get<T>();
    } else {
      out = it->get<T>();
    }
  } catch (const std::exception &) {
    throw ArgumentError(std::string("config: bad value for '") + key + "'");
  }
}

void positive(double v, const char *name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError(std::string("config: ") + name + " must be > 0");
}

InitialDataSpec parse_initial(const json &j, const std::filesystem::path &base) {
  reject_unknown(j, "initial_data", {"kind", "amplitude", "modes", "path"});
  InitialDataSpec s;
  std::string kind = "reference";
  read(j, "kind", kind);
  if (kind == "reference") {
    s.kind = InitialDataSpec::Kind::Reference;
    if (j.contains("modes") || j.contains("path")) throw ArgumentError("config: reference data takes only 'amplitude'");
    read(j, "amplitude", s.amplitude);
  } else if (kind == "modes") {
    s.kind = InitialDataSpec::Kind::Modes;
    if (!j.contains("modes") || !j["modes"].is_array()) throw ArgumentError("config: 'modes' must be a list");
    for (const auto &m : j["modes"]) {
      ModeTerm t;
      if (m.is_array() && m.size() == 2 && m[0].is_number_integer() && m[1].is_number()) {
        t.k = m[0].get<int>();
        t.amplitude = m[1].get<double>();
      } else if (m.is_object()) {
        reject_unknown(m, "modes entry", {"k", "amplitude"});
        if (!m.contains("k") || !m.contains("amplitude")) throw ArgumentError("config: mode needs 'k' and 'amplitude'");
        read(m, "k", t.k);
        read(m, "amplitude", t.amplitude);
      } else {
        throw ArgumentError("config: mode entries are [k, a_k] or {\"k\", \"amplitude\"}");
      }
      if (t.k < 0) throw ArgumentError("config: mode index k must be >= 0");
      s.modes.push_back(t);
    }
    if (s.modes.empty()) throw ArgumentError("config: 'modes' is empty");
  } else if (kind == "curve") {
    s.kind = InitialDataSpec::Kind::Curve;
    std::string p;
    read(j, "path", p);
    if (p.empty()) throw ArgumentError("config: curve data needs 'path'");
    s.curve = std::filesystem::path(p).is_absolute() ? std::filesystem::path(p) : base / p;
  } else {
    throw ArgumentError("config: initial_data.kind must be reference, modes or curve");
  }
  return s;
}

const char *kind_name(InitialDataSpec::Kind k) {
  switch (k) {
  case InitialDataSpec::Kind::Reference: return "reference";
  case InitialDataSpec::Kind::Modes: return "modes";
  case InitialDataSpec::Kind::Curve: return "curve";
  }
  return "reference";
}

} // namespace

void RunConfig::validate() const {
  if (n_markers < 8) throw ArgumentError("config: n_markers must be >= 8");
  if (wall_panels_per_side < 4) throw ArgumentError("config: wall_panels_per_side must be >= 4");
  positive(steps.cfl, "cfl");
  positive(steps.dt_min, "dt_min");
  positive(steps.dt_max, "dt_max");
  if (steps.dt_min > steps.dt_max) throw ArgumentError("config: dt_min exceeds dt_max");
  positive(record_dt, "record_dt");
  positive(t_end_cap, "t_end_cap");
  if (redistribution_period < 0) throw ArgumentError("config: redistribution_period must be >= 0");
  if (lattice.nx < 2 || lattice.ny < 2) throw ArgumentError("config: lattice needs nx, ny >= 2");
  positive(near_field_factor, "near_field_factor");
  if (quadrature_order < 1 || quadrature_order > 64) throw ArgumentError("config: quadrature_order must be in [1, 64]");
  for (auto [v, name] : {std::pair{tol.area_tol, "area_tol"}, {tol.energy_tol, "energy_tol"},
                         {tol.ident_tol, "ident_tol"}, {tol.positivity_tol, "positivity_tol"},
                         {tol.riccati_tol, "riccati_tol"}, {tol.check_tol, "check_tol"},
                         {tol.derivative_tol, "derivative_tol"}, {tol.A_agreement_tol, "A_agreement_tol"},
                         {tol.bound_slack, "bound_slack"}, {tol.flux_tol, "flux_tol"},
                         {tol.corner_tol, "corner_tol"}, {detector.collide_tol, "collide_tol"},
                         {detector.curvature_factor, "curvature_factor"}, {detector.L_max, "L_max"},
                         {validation.min_order, "min_order"}, {validation.constant_tol, "constant_tol"}})
    positive(v, name);
  if (validation.modes.empty() || validation.panel_counts.size() < 2)
    throw ArgumentError("config: validation needs modes and at least two panel counts");
  for (std::size_t i = 0; i < validation.panel_counts.size(); ++i) {
    if (validation.panel_counts[i] < 8) throw ArgumentError("config: validation panel counts must be >= 8");
    if (i > 0 && validation.panel_counts[i] <= validation.panel_counts[i - 1])
      throw ArgumentError("config: validation panel counts must increase");
  }
  for (int k : validation.modes)
    if (k < 1) throw ArgumentError("config: validation modes must be >= 1");
  if (validation.double_layer_sign != 1.0 && validation.double_layer_sign != -1.0)
    throw ArgumentError("config: double_layer_sign must be 1 or -1");
  if (initial.kind == InitialDataSpec::Kind::Reference && initial.amplitude == 0.0)
    throw ArgumentError("config: reference amplitude must be nonzero");
}

RunConfig parse_config(std::string_view text, const std::filesystem::path &base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ArgumentError(std::string("config: invalid JSON: ") + e.what());
  }
  reject_unknown(j, "config",
                 {"initial_data", "n_markers", "wall_panels_per_side", "cfl", "dt_min", "dt_max", "record_dt",
                  "t_end_cap", "redistribution_period", "lattice", "near_field_factor", "quadrature_order",
                  "tolerances", "detector", "validation", "output_dir", "rng_seed"});
  RunConfig c;
  if (j.contains("initial_data")) c.initial = parse_initial(j["initial_data"], base_dir);
  read(j, "n_markers", c.n_markers);
  read(j, "wall_panels_per_side", c.wall_panels_per_side);
  read(j, "cfl", c.steps.cfl);
  read(j, "dt_min", c.steps.dt_min);
  read(j, "dt_max", c.steps.dt_max);
  read(j, "record_dt", c.record_dt);
  read(j, "t_end_cap", c.t_end_cap);
  read(j, "redistribution_period", c.redistribution_period);
  if (j.contains("lattice")) {
    const auto &l = j["lattice"];
    reject_unknown(l, "lattice", {"nx", "ny"});
    read(l, "nx", c.lattice.nx);
    read(l, "ny", c.lattice.ny);
  }
  read(j, "near_field_factor", c.near_field_factor);
  read(j, "quadrature_order", c.quadrature_order);
  if (j.contains("tolerances")) {
    const auto &t = j["tolerances"];
    reject_unknown(t, "tolerances",
                   {"area_tol", "energy_tol", "ident_tol", "positivity_tol", "riccati_tol", "check_tol",
                    "derivative_tol", "A_agreement_tol", "bound_slack", "flux_tol", "corner_tol"});
    read(t, "area_tol", c.tol.area_tol);
    read(t, "energy_tol", c.tol.energy_tol);
    read(t, "ident_tol", c.tol.ident_tol);
    read(t, "positivity_tol", c.tol.positivity_tol);
    read(t, "riccati_tol", c.tol.riccati_tol);
    read(t, "check_tol", c.tol.check_tol);
    read(t, "derivative_tol", c.tol.derivative_tol);
    read(t, "A_agreement_tol", c.tol.A_agreement_tol);
    read(t, "bound_slack", c.tol.bound_slack);
    read(t, "flux_tol", c.tol.flux_tol);
    read(t, "corner_tol", c.tol.corner_tol);
  }
  if (j.contains("detector")) {
    const auto &d = j["detector"];
    reject_unknown(d, "detector", {"collide_tol", "curvature_factor", "L_max"});
    read(d, "collide_tol", c.detector.collide_tol);
    read(d, "curvature_factor", c.detector.curvature_factor);
    read(d, "L_max", c.detector.L_max);
  }
  if (j.contains("validation")) {
    const auto &v = j["validation"];
    reject_unknown(v, "validation", {"modes", "panel_counts", "min_order", "constant_tol", "double_layer_sign"});
    read(v, "modes", c.validation.modes);
    read(v, "panel_counts", c.validation.panel_counts);
    read(v, "min_order", c.validation.min_order);
    read(v, "constant_tol", c.validation.constant_tol);
    read(v, "double_layer_sign", c.validation.double_layer_sign);
  }
  std::string out;
  read(j, "output_dir", out);
  if (!out.empty()) c.output_dir = out;
  read(j, "rng_seed", c.rng_seed);
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string config_to_json(const RunConfig &c) {
  json init;
  init["kind"] = kind_name(c.initial.kind);
  if (c.initial.kind == InitialDataSpec::Kind::Reference) init["amplitude"] = c.initial.amplitude;
  if (c.initial.kind == InitialDataSpec::Kind::Modes) {
    init["modes"] = json::array();
    for (const auto &m : c.initial.modes) init["modes"].push_back({m.k, m.amplitude});
  }
  if (c.initial.kind == InitialDataSpec::Kind::Curve) init["path"] = c.initial.curve.string();
  json j;
  j["initial_data"] = init;
  j["n_markers"] = c.n_markers;
  j["wall_panels_per_side"] = c.wall_panels_per_side;
  j["cfl"] = c.steps.cfl;
  j["dt_min"] = c.steps.dt_min;
  j["dt_max"] = c.steps.dt_max;
  j["record_dt"] = c.record_dt;
  j["t_end_cap"] = c.t_end_cap;
  j["redistribution_period"] = c.redistribution_period;
  j["lattice"] = {{"nx", c.lattice.nx}, {"ny", c.lattice.ny}};
  j["near_field_factor"] = c.near_field_factor;
  j["quadrature_order"] = c.quadrature_order;
  j["tolerances"] = {{"area_tol", c.tol.area_tol},
                     {"energy_tol", c.tol.energy_tol},
                     {"ident_tol", c.tol.ident_tol},
                     {"positivity_tol", c.tol.positivity_tol},
                     {"riccati_tol", c.tol.riccati_tol},
                     {"check_tol", c.tol.check_tol},
                     {"derivative_tol", c.tol.derivative_tol},
                     {"A_agreement_tol", c.tol.A_agreement_tol},
                     {"bound_slack", c.tol.bound_slack},
                     {"flux_tol", c.tol.flux_tol},
                     {"corner_tol", c.tol.corner_tol}};
  j["detector"] = {{"collide_tol", c.detector.collide_tol},
                   {"curvature_factor", c.detector.curvature_factor},
                   {"L_max", c.detector.L_max}};
  j["validation"] = {{"modes", c.validation.modes},
                     {"panel_counts", c.validation.panel_counts},
                     {"min_order", c.validation.min_order},
                     {"constant_tol", c.validation.constant_tol},
                     {"double_layer_sign", c.validation.double_layer_sign}};
  j["output_dir"] = c.output_dir.string();
  j["rng_seed"] = c.rng_seed;
  return j.dump(2) + "\n";
}

} // namespace fsb
