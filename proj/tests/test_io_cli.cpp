#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "dirsim/scenario_io.hpp"
#include "helpers.hpp"

using namespace dirsim;
using namespace dirsim::testing;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string tmp_dir() { return DIRSIM_TEST_TMP; }

std::string write_tmp(const std::string& name, const std::string& content) {
  const std::string path = tmp_dir() + "/" + name;
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& tag) {
  const std::string out_path = tmp_dir() + "/cli_" + tag + ".out";
  const std::string cmd = std::string(DIRSIM_BIN_PATH) + " " + args + " > " +
                          out_path + " 2>&1";
  const int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = read_file(out_path);
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("empty config resolves to the default deployment") {
  const LoadedConfig loaded = parse_config("{}");
  const ScenarioConfig& cfg = loaded.scenario;
  CHECK(cfg.bs.size() == 4);
  CHECK(cfg.irs1.size() == 100);
  CHECK(cfg.irs2.size() == 100);
  CHECK(cfg.d_over_lambda == 0.5);
  CHECK(cfg.tx_power_w == doctest::Approx(3.1622776601683794e-3));
  CHECK(cfg.noise_power_w == doctest::Approx(3.9810717055349695e-14));
  CHECK(cfg.bs_irs1.fading.rician_k == doctest::Approx(10.0));
  CHECK(cfg.bs_user.angles.aod_h == doctest::Approx(kPi / 3));
  CHECK(cfg.inter_irs.angles.aoa_h == doctest::Approx(kPi / 4));
  // path losses derive from the node geometry
  const double d_su = std::sqrt(50.0 * 50.0 + 0.2 * 0.2);
  CHECK(cfg.bs_user.fading.alpha ==
        doctest::Approx(1.0 / (1000.0 * std::pow(d_su, 3.7))).epsilon(1e-12));
  CHECK(*cfg.inter_irs.distance_m == doctest::Approx(40.0));
  CHECK(!loaded.sweep.has_value());
}

TEST_CASE("overrides, unit suffixes, and strict validation") {
  const LoadedConfig kdb = parse_config(R"({"K_dB": 0})");
  CHECK(kdb.scenario.bs_irs1.fading.rician_k == doctest::Approx(1.0));
  CHECK(kdb.scenario.irs2_user.fading.rician_k == doctest::Approx(1.0));

  CHECK_THROWS_AS(parse_config(R"({"d_over_lambda": 0.7})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"d_over_lambda": 0.0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"unknown_key": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"links": {"bs_irs9": {}}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"links": {"bs_irs1": {"k": 3}}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  // the offending field is named
  try {
    parse_config(R"({"links": {"bs_irs1": {"kfactor_db": 3}}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("kfactor_db") != std::string::npos);
  }

  const LoadedConfig link = parse_config(
      R"({"links": {"bs_irs1": {"alpha_db": -60, "k_db": 3},
                    "bs_user": {"distance_m": 10, "path_loss_exponent": 2.0}}})");
  CHECK(link.scenario.bs_irs1.fading.alpha == doctest::Approx(1e-6));
  CHECK(link.scenario.bs_irs1.fading.rician_k ==
        doctest::Approx(std::pow(10.0, 0.3)));
  CHECK(link.scenario.bs_user.fading.alpha == doctest::Approx(1e-5));

  const LoadedConfig reg = parse_config(R"({"regime": "pure_nlos"})");
  CHECK(reg.scenario.regime() == Regime::pure_nlos);
}

TEST_CASE("sweep section parses") {
  const LoadedConfig loaded = parse_config(R"({
    "sweep": {"variable": "P_S", "values": [0, 5, 10],
              "systems": ["dirs_c", "dirs_nc"],
              "designs": ["optimized", "random"],
              "metrics": ["rate_bound"],
              "mc_samples": 500, "random_draws": 4}})");
  REQUIRE(loaded.sweep.has_value());
  CHECK(loaded.sweep->variable == SweepVariable::p_s);
  CHECK(loaded.sweep->values.size() == 3);
  CHECK(loaded.sweep->systems.size() == 2);
  CHECK_THROWS_AS(
      parse_config(R"({"sweep": {"variable": "bogus", "values": [1]}})"),
      ConfigError);
}

TEST_CASE("phase files round-trip") {
  PhaseShifts ph;
  ph.phi1 = VectorXd::LinSpaced(4, 0.1, 3.0);
  ph.phi2 = VectorXd::LinSpaced(3, 0.2, 5.9);
  const PhaseShifts back = phases_from_json(phases_to_json(ph));
  CHECK((back.phi1 - ph.phi1).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((back.phi2 - ph.phi2).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("analyze reports a case-3 default and round-trips its numbers") {
  const std::string cfg = write_tmp("analyze.json", "{}");
  const CliResult r = run_cli("analyze --config " + cfg, "analyze");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("case3") != std::string::npos);
  CHECK(r.out.find("general") != std::string::npos);

  // the printed gamma equals the library value at zero phases
  const std::string num_key = "\"gamma\": ";
  const auto pos = r.out.find(num_key);
  REQUIRE(pos != std::string::npos);
  const double printed = std::strtod(r.out.c_str() + pos + num_key.size(), nullptr);
  const ScenarioConfig def = default_scenario();
  const double expect = PowerModel(def).gamma(zero_phases(def));
  CHECK(printed == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("analyze covers the comparison systems and explicit phases") {
  const std::string cfg = write_tmp("sys.json", R"({
    "arrays": {"irs1": [2, 2], "irs2": [2, 2]}})");
  for (const std::string sys :
       {"dirs_nc", "sirs_pos1", "sirs_pos_mid", "no_irs"}) {
    const CliResult r =
        run_cli("analyze --config " + cfg + " --system " + sys, "sys_" + sys);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"system\": \"" + sys + "\"") != std::string::npos);
  }

  // explicit phases: the reported power matches the library evaluation
  PhaseShifts ph;
  ph.phi1 = VectorXd::LinSpaced(4, 0.1, 2.0);
  ph.phi2 = VectorXd::LinSpaced(4, 0.3, 5.0);
  const std::string phases = write_tmp("in_phases.json", phases_to_json(ph));
  const CliResult r = run_cli(
      "analyze --config " + cfg + " --phases " + phases, "with_phases");
  REQUIRE(r.exit_code == 0);
  ScenarioConfig scen = parse_config(read_file(cfg)).scenario;
  const double expect = PowerModel(scen).gamma(ph);
  const std::string num_key = "\"gamma\": ";
  const auto pos = r.out.find(num_key);
  REQUIRE(pos != std::string::npos);
  const double printed =
      std::strtod(r.out.c_str() + pos + num_key.size(), nullptr);
  CHECK(printed == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("optimize covers the comparison systems") {
  const std::string cfg = write_tmp("opt_sys.json", R"({
    "arrays": {"irs1": [2, 2], "irs2": [2, 2]}})");
  const CliResult nc = run_cli("optimize --config " + cfg +
                                   " --system dirs_nc --output " + tmp_dir() +
                                   "/nc_phases.json",
                               "opt_nc");
  REQUIRE(nc.exit_code == 0);
  CHECK(nc.out.find("closed_form") != std::string::npos);
  const PhaseShifts ph =
      phases_from_json(read_file(tmp_dir() + "/nc_phases.json"));
  CHECK(ph.phi1.size() == 4);

  const CliResult s1 = run_cli("optimize --config " + cfg +
                                   " --system sirs_pos1 --output " + tmp_dir() +
                                   "/s0_phases.json",
                               "opt_s0");
  REQUIRE(s1.exit_code == 0);
  const PhaseShifts p0 =
      phases_from_json(read_file(tmp_dir() + "/s0_phases.json"));
  CHECK(p0.phi1.size() == 8);  // the lone panel carries T1 + T2 elements

  const CliResult none =
      run_cli("optimize --config " + cfg + " --system no_irs", "opt_none");
  CHECK(none.exit_code == 2);
}

TEST_CASE("analyze reports the phase-invariant regime") {
  const std::string cfg =
      write_tmp("nlos.json", R"({"regime": "pure_nlos"})");
  const CliResult r = run_cli("analyze --config " + cfg, "nlos");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("pure_nlos") != std::string::npos);
  CHECK(r.out.find("case0") != std::string::npos);
}

TEST_CASE("optimize writes phases and a nondecreasing trace") {
  const std::string cfg = write_tmp("opt.json", R"({
    "arrays": {"irs1": [3, 3], "irs2": [3, 3]}})");
  const std::string out = tmp_dir() + "/opt_phases.json";
  const CliResult r =
      run_cli("optimize --config " + cfg + " --output " + out, "opt");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("coordinate_descent") != std::string::npos);

  const PhaseShifts ph = phases_from_json(read_file(out));
  CHECK(ph.phi1.size() == 9);
  CHECK(ph.phi2.size() == 9);

  // trace CSV: header plus strictly ordered iterations
  std::istringstream trace(read_file(tmp_dir() + "/opt_phases.trace.csv"));
  std::string line;
  REQUIRE(std::getline(trace, line));
  CHECK(line == "iteration,objective");
  double prev = -1.0;
  int rows = 0;
  while (std::getline(trace, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    const double obj = std::strtod(line.c_str() + comma + 1, nullptr);
    CHECK(obj >= prev - 1e-10 * std::abs(obj));
    prev = obj;
    ++rows;
  }
  CHECK(rows >= 2);
}

TEST_CASE("optimize reports the degenerate closed-form and invariant paths") {
  const std::string cfg3 = write_tmp("cf3.json", R"({
    "arrays": {"irs1": [2, 2], "irs2": [2, 2]},
    "links": {"inter_irs": {"regime": "pure_nlos"},
              "bs_user": {"regime": "pure_nlos"}}})");
  const CliResult r3 = run_cli("optimize --config " + cfg3 + " --output " +
                                   tmp_dir() + "/cf3.json",
                               "cf3");
  REQUIRE(r3.exit_code == 0);
  // LoS-free relay and direct links: the joint closed form applies
  CHECK(r3.out.find("closed_form_case3") != std::string::npos);

  const std::string cfg0 = write_tmp("cf0.json", R"({"regime": "pure_nlos"})");
  const CliResult r0 = run_cli("optimize --config " + cfg0 + " --output " +
                                   tmp_dir() + "/cf0.json",
                               "cf0");
  REQUIRE(r0.exit_code == 0);
  CHECK(r0.out.find("no optimization needed") != std::string::npos);
}

TEST_CASE("sweep produces a stable CSV schema and is byte-reproducible") {
  const std::string cfg = write_tmp("sweep.json", R"({
    "arrays": {"irs1": [2, 2], "irs2": [2, 2]},
    "sweep": {"variable": "P_S", "values": [0, 5, 10],
              "systems": ["dirs_c", "sirs_pos2", "no_irs"],
              "designs": ["optimized", "random"],
              "metrics": ["gamma_analytic", "rate_bound"],
              "random_draws": 3}})");
  const std::string out1 = tmp_dir() + "/sweep1.csv";
  const std::string out2 = tmp_dir() + "/sweep2.csv";
  const CliResult r1 = run_cli(
      "sweep --config " + cfg + " --seed 9 --output " + out1, "sweep1");
  REQUIRE(r1.exit_code == 0);
  const CliResult r2 = run_cli(
      "sweep --config " + cfg + " --seed 9 --output " + out2, "sweep2");
  REQUIRE(r2.exit_code == 0);
  const std::string csv1 = read_file(out1);
  CHECK(csv1 == read_file(out2));

  std::istringstream lines(csv1);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header ==
        "variable,sweep_value,system,design,metric,value,std_error,iterations");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3 * 3 * 2 * 2);  // values x systems x designs x metrics
}

TEST_CASE("rates rise with transmit power and the split peaks at balance") {
  // strictly increasing rate along a transmit-power sweep
  ScenarioConfig base = default_scenario();
  base.irs1 = {2, 2};
  base.irs2 = {2, 2};
  SweepSpec spec;
  spec.variable = SweepVariable::p_s;
  spec.values = {-5, 0, 5, 10};
  spec.systems = {SystemKind::dirs_c};
  spec.designs = {Design::optimized};
  spec.metrics = {Metric::rate_bound};
  const std::vector<ResultRow> rows = run_sweep(base, spec, 1);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].value > rows[i - 1].value);

  // symmetric fading: the element split between the panels peaks at half
  ScenarioConfig sym = unit_scenario(4, 36, 36);
  set_k_all(sym, 10.0);
  sym.bs_irs2.angles = sym.bs_irs1.angles;
  sym.irs2_user.angles = sym.irs1_user.angles;
  sym.tx_power_w = 1.0;
  sym.noise_power_w = 1.0;
  SweepSpec split;
  split.variable = SweepVariable::t1_split;
  split.values = {24, 36, 48};
  split.systems = {SystemKind::dirs_c};
  split.designs = {Design::optimized};
  split.metrics = {Metric::rate_bound};
  const std::vector<ResultRow> srows = run_sweep(sym, split, 1);
  REQUIRE(srows.size() == 3);
  CHECK(srows[1].value > srows[0].value);
  CHECK(srows[1].value > srows[2].value);
}

TEST_CASE("sweep rows are identical across worker-pool sizes") {
  ScenarioConfig base = default_scenario();
  base.irs1 = {2, 2};
  base.irs2 = {2, 2};
  SweepSpec spec;
  spec.variable = SweepVariable::p_s;
  spec.values = {0, 5, 10};
  spec.systems = {SystemKind::dirs_c, SystemKind::dirs_nc};
  spec.designs = {Design::optimized, Design::random};
  spec.metrics = {Metric::gamma_analytic, Metric::gamma_mc};
  spec.mc_samples = 2000;
  const std::vector<ResultRow> one = run_sweep(base, spec, 7, 1);
  const std::vector<ResultRow> four = run_sweep(base, spec, 7, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].sweep_value == four[i].sweep_value);
    CHECK(one[i].system == four[i].system);
    CHECK(one[i].design == four[i].design);
    CHECK(one[i].metric == four[i].metric);
    CHECK(one[i].value == four[i].value);  // bit-identical
  }
}

TEST_CASE("position sweeps move panels and rebuild derived path losses") {
  const ScenarioConfig base = default_scenario();
  const ScenarioConfig moved =
      apply_sweep_value(base, SweepVariable::irs_x, 10.0);
  CHECK(moved.pos_irs1->x == doctest::Approx(-10.0));
  CHECK(moved.pos_irs2->x == doctest::Approx(-10.0));
  // explicit angles stay, distances and path losses refresh
  CHECK(moved.bs_irs1.angles.aod_h == base.bs_irs1.angles.aod_h);
  const double d = distance(*moved.pos_bs, *moved.pos_irs1);
  CHECK(*moved.bs_irs1.distance_m == doctest::Approx(d));
  CHECK(moved.bs_irs1.fading.alpha ==
        doctest::Approx(path_loss(d, 2.3)).epsilon(1e-12));
  CHECK(moved.inter_irs.fading.alpha == base.inter_irs.fading.alpha);

  const ScenarioConfig spread =
      apply_sweep_value(base, SweepVariable::irs_y, 10.0);
  CHECK(spread.pos_irs1->y == doctest::Approx(-10.0));
  CHECK(spread.pos_irs2->y == doctest::Approx(10.0));
  CHECK(*spread.inter_irs.distance_m == doctest::Approx(20.0));
}

TEST_CASE("rates do not decrease in the Rician factor") {
  ScenarioConfig base = default_scenario();
  base.irs1 = {3, 3};
  base.irs2 = {3, 3};
  SweepSpec spec;
  spec.variable = SweepVariable::k;
  spec.values = {-10, 0, 10, 20};
  spec.systems = {SystemKind::dirs_c};
  spec.designs = {Design::optimized};
  spec.metrics = {Metric::rate_bound};
  const std::vector<ResultRow> rows = run_sweep(base, spec, 1);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].value >= rows[i - 1].value - 1e-12);
}

TEST_CASE("verify passes on a sized-down default and exits by result") {
  const std::string cfg = write_tmp("verify.json", R"({
    "arrays": {"bs": [2, 2], "irs1": [4, 4], "irs2": [4, 4]}})");
  const CliResult ok =
      run_cli("verify --config " + cfg + " --samples 100000", "verify_ok");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  // negative control: corrupted closed forms must fail loudly
  const CliResult bad = run_cli(
      "verify --config " + cfg + " --samples 100000 --corrupt-analytic",
      "verify_bad");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
  const std::string cfg = write_tmp("bad.json", R"({"d_over_lambda": 0.9})");
  const CliResult r = run_cli("analyze --config " + cfg, "bad");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("config error") != std::string::npos);
}

TEST_SUITE_END();
