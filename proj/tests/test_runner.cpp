#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fsb/errors.hpp"
#include "fsb/runner.hpp"

using namespace fsb;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name) {
  const auto dir = fs::temp_directory_path() / ("fsb_runner_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path &p, const std::string &text) { std::ofstream(p) << text; }

RunConfig still_config() {
  RunConfig cfg;
  cfg.initial.kind = InitialDataSpec::Kind::Modes;
  cfg.initial.modes = {{1, 0.0}};
  cfg.n_markers = 32;
  cfg.wall_panels_per_side = 16;
  cfg.record_dt = 0.1;
  cfg.t_end_cap = 0.5;
  return cfg;
}

RunConfig short_reference() {
  RunConfig cfg;
  cfg.n_markers = 32;
  cfg.wall_panels_per_side = 16;
  cfg.record_dt = 5e-4;
  cfg.t_end_cap = 2e-3;
  return cfg;
}

} // namespace

TEST_SUITE("runner") {

TEST_CASE("config defaults and parsing") {
  const auto d = parse_config("{}");
  CHECK(d.n_markers == 64);
  CHECK(d.wall_panels_per_side == 32);
  CHECK(d.initial.kind == InitialDataSpec::Kind::Reference);
  CHECK(d.initial.amplitude == 1.0);
  CHECK(d.tol.area_tol == 1e-3);

  const auto c = parse_config(R"({"initial_data": {"kind": "modes", "modes": [[2, 0.5], {"k": 4, "amplitude": -0.1}]},
                                 "n_markers": 40, "lattice": {"nx": 8, "ny": 6}, "tolerances": {"ident_tol": 0.1}})");
  CHECK(c.initial.kind == InitialDataSpec::Kind::Modes);
  REQUIRE(c.initial.modes.size() == 2);
  CHECK(c.initial.modes[1].k == 4);
  CHECK(c.initial.modes[1].amplitude == -0.1);
  CHECK(c.n_markers == 40);
  CHECK(c.lattice.ny == 6);
  CHECK(c.tol.ident_tol == 0.1);
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config(R"({"n_marker": 64})"), ArgumentError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"area": 1}})"), ArgumentError);
  CHECK_THROWS_AS(parse_config(R"({"n_markers": 4})"), ArgumentError);
  CHECK_THROWS_AS(parse_config(R"({"n_markers": "many"})"), ArgumentError);
  CHECK_THROWS_AS(parse_config(R"({"record_dt": -1})"), ArgumentError);
  CHECK_THROWS_AS(parse_config(R"({"t_end_cap": 0})"), ArgumentError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"ident_tol": -0.1}})"), ArgumentError);
  CHECK_THROWS_AS(parse_config(R"({"initial_data": {"kind": "spline"}})"), ArgumentError);
  CHECK_THROWS_AS(parse_config("{not json"), ArgumentError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ArgumentError);
}

TEST_CASE("config round-trips through JSON") {
  auto cfg = still_config();
  cfg.tol.energy_tol = 0.02;
  cfg.detector.L_max = 123.0;
  const auto text = config_to_json(cfg);
  const auto back = parse_config(text);
  CHECK(config_to_json(back) == text);
  CHECK(back.detector.L_max == 123.0);
}

TEST_CASE("still fluid runs to the cap with every check passing") {
  const auto R = run_simulation(still_config());
  CHECK_FALSE(R.breakdown.has_value());
  CHECK(R.undiagnosed_failure.empty());
  CHECK(R.t_final == doctest::Approx(0.5));
  CHECK(R.records.size() == 6);
  for (const auto &r : R.records) {
    CHECK(r.L == 0.0);
    CHECK(r.area == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(R.verdicts.riccati_skipped);
  CHECK_FALSE(R.bound_held.has_value());
  CHECK(R.all_checks_passed());
  CHECK(R.exit_code() == kExitOk);
}

TEST_CASE("short reference run is deterministic") {
  const auto cfg = short_reference();
  const auto a = run_simulation(cfg);
  const auto b = run_simulation(cfg);
  CHECK(a.records.size() == 5);
  CHECK(report_json(cfg, a) == report_json(cfg, b));
  CHECK(diagnostics_csv(a.records) == diagnostics_csv(b.records));
  CHECK(a.A_agreement);
  CHECK(a.flux_compatible);
  CHECK(a.c1 == 2.0);
  for (std::size_t i = 1; i < a.records.size(); ++i) CHECK(a.records[i].L > a.records[i - 1].L);
}

TEST_CASE("quadrature and boundary A must agree") {
  auto cfg = short_reference();
  cfg.quadrature_order = 1;
  CHECK_THROWS_AS(run_simulation(cfg), ArgumentError);
}

TEST_CASE("curve input") {
  const auto dir = scratch_dir("curve");
  const auto pot = make_reference_data(1.0);
  std::string csv = "alpha,x1,x2,phi\n";
  const int n = 33;
  for (int i = 0; i < n; ++i) {
    const double x = double(i) / (n - 1);
    std::ostringstream row;
    row.precision(17);
    row << x << "," << x << ",1," << pot.value({x, 1.0}) << "\n";
    csv += row.str();
  }
  spit(dir / "curve.csv", csv);
  const auto s = load_curve_file(dir / "curve.csv");
  CHECK(s.curve.size() == 33);

  const auto cfg = parse_config(R"({"initial_data": {"kind": "curve", "path": "curve.csv"}, "n_markers": 33,
                                   "wall_panels_per_side": 16, "record_dt": 0.0005, "t_end_cap": 0.001})", dir);
  const auto R = run_simulation(cfg);
  CHECK(std::isnan(R.A_quadrature));
  CHECK(R.A_bem > 7.0);

  spit(dir / "bad.csv", "x,y\n0,1\n");
  CHECK_THROWS_AS(load_curve_file(dir / "bad.csv"), ArgumentError);
}

TEST_CASE("bem validation passes and the sign hook breaks it") {
  ValidationSpec spec;
  spec.panel_counts = {16, 32, 64};
  const auto ok = run_bem_validation(spec);
  CHECK(ok.passed);
  CHECK(ok.rows.size() == 6);
  CHECK(ok.min_order >= 1.0);
  CHECK(ok.constant_error <= 1e-8);
  spec.double_layer_sign = -1.0;
  CHECK_FALSE(run_bem_validation(spec).passed);
}

TEST_CASE("simulate writes a run directory that verifies") {
  const auto dir = scratch_dir("verify");
  std::ostringstream log;
  REQUIRE(simulate(short_reference(), dir, log, true) == kExitOk);
  for (const char *f : {"diagnostics.csv", "aux.csv", "report.json", "config.json", "snapshots/0000.csv"})
    CHECK(fs::exists(dir / f));
  CHECK(slurp(dir / "diagnostics.csv").rfind(std::string(kDiagnosticsHeader) + "\n", 0) == 0);

  std::ostringstream vlog;
  CHECK(verify_identities(dir, vlog) == kExitOk);

  SUBCASE("corrupted L is caught") {
    std::istringstream in(slurp(dir / "diagnostics.csv"));
    std::string line, out;
    int row = 0;
    while (std::getline(in, line)) {
      if (row == 3) {
        const auto a = line.find(','), b = line.find(',', a + 1);
        line = line.substr(0, a + 1) + "-1000" + line.substr(b);
      }
      out += line + "\n";
      ++row;
    }
    spit(dir / "diagnostics.csv", out);
    std::ostringstream l;
    CHECK(verify_identities(dir, l) == kExitCheckFailed);
  }
  SUBCASE("a single record is insufficient") {
    std::istringstream in(slurp(dir / "diagnostics.csv"));
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    spit(dir / "diagnostics.csv", header + "\n" + first + "\n");
    std::istringstream ain(slurp(dir / "aux.csv"));
    std::getline(ain, header);
    std::getline(ain, first);
    spit(dir / "aux.csv", header + "\n" + first + "\n");
    std::ostringstream l;
    verify_identities(dir, l);
    CHECK(l.str().find("insufficient records") != std::string::npos);
  }
  SUBCASE("missing files are bad input") {
    fs::remove(dir / "aux.csv");
    std::ostringstream l;
    CHECK(verify_identities(dir, l) == kExitBadInput);
  }
}

TEST_CASE("bad input exits with code 2") {
  auto cfg = short_reference();
  cfg.initial.kind = InitialDataSpec::Kind::Modes;
  cfg.initial.modes = {{1, 1.0}}; // corner velocity nonzero
  std::ostringstream log;
  CHECK(simulate(cfg, scratch_dir("bad"), log, true) == kExitBadInput);
}

}
