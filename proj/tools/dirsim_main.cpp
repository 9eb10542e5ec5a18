// Command-line front end: loads JSON scenarios, evaluates and optimizes the
// average channel power of the IRS-assisted systems, runs parameter sweeps,
// and checks every closed form against its Monte-Carlo estimate.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "dirsim/scenario_io.hpp"

namespace {

using namespace dirsim;

struct CommonArgs {
  std::string config_path;
  std::string output_path;
  std::string phases_path;
  std::string system = "dirs_c";
  bool system_given = false;
  std::string design;
  std::uint64_t seed = 0;
  bool seed_given = false;
  long long samples = 100000;
  int max_iters = 500;
  double tol = 1e-8;
  bool corrupt_analytic = false;
};

LoadedConfig load_or_default(const CommonArgs& args) {
  if (args.config_path.empty()) return {default_scenario(), std::nullopt};
  return load_config_file(args.config_path);
}

std::uint64_t effective_seed(const CommonArgs& args, const ScenarioConfig& cfg) {
  return args.seed_given ? args.seed : cfg.rng_seed;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

nlohmann::json report_to_json(const ScenarioConfig& cfg, SystemKind kind,
                              const PhaseShifts& ph) {
  const double g = analytic_gamma(cfg, ph, kind);
  nlohmann::json doc;
  doc["system"] = to_string(kind);
  doc["case"] = to_string(kind == SystemKind::dirs_nc ? classify_case_dnc(cfg)
                                                      : classify_case(cfg));
  doc["regime"] = to_string(cfg.regime());
  doc["gamma"] = g;
  doc["rate_bound_bits"] = rate_bound(cfg, g);
  return doc;
}

PhaseShifts phases_for(const ScenarioConfig& cfg, SystemKind kind,
                       const std::string& phases_path) {
  if (!phases_path.empty()) {
    std::ifstream in(phases_path);
    if (!in) throw std::runtime_error("cannot read " + phases_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return phases_from_json(text);
  }
  if (is_sirs(kind)) {
    PhaseShifts ph;
    ph.phi1 = VectorXd::Zero(make_sirs_scenario(cfg, kind).irs0->size());
    return ph;
  }
  if (kind == SystemKind::no_irs) return PhaseShifts{};
  return zero_phases(cfg);
}

int cmd_analyze(const CommonArgs& args) {
  const LoadedConfig loaded = load_or_default(args);
  const SystemKind kind = system_kind_from_string(args.system);
  const PhaseShifts ph = phases_for(loaded.scenario, kind, args.phases_path);
  const nlohmann::json doc = report_to_json(loaded.scenario, kind, ph);
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!args.output_path.empty()) write_file(args.output_path, text);
  return 0;
}

int cmd_optimize(const CommonArgs& args) {
  const LoadedConfig loaded = load_or_default(args);
  const ScenarioConfig& cfg = loaded.scenario;
  const SystemKind kind = system_kind_from_string(args.system);

  PhaseShifts phases;
  nlohmann::json doc;
  std::vector<double> trace_objective;

  if (kind == SystemKind::dirs_c) {
    OptimizerConfig opt;
    opt.max_iterations = args.max_iters;
    opt.rel_tolerance = args.tol;
    const PowerReport report = make_power_report(cfg, run_optimizer(cfg, opt));
    phases = report.trace.phases;
    trace_objective = report.trace.objective;
    doc["method"] = to_string(report.trace.method);
    doc["converged"] = report.trace.converged;
    doc["iterations"] = report.trace.iterations_used;
    if (report.trace.method == OptimizeMethod::none)
      doc["note"] = "phase-invariant case, no optimization needed";
  } else if (kind == SystemKind::dirs_nc) {
    phases = optimal_phases_dnc(cfg);
    doc["method"] = "closed_form";
    doc["converged"] = true;
    trace_objective = {analytic_gamma(cfg, phases, kind)};
  } else if (is_sirs(kind)) {
    phases.phi1 = optimal_phases_sgl(make_sirs_scenario(cfg, kind));
    doc["method"] = "closed_form";
    doc["converged"] = true;
    trace_objective = {analytic_gamma(cfg, phases, kind)};
  } else {
    std::cerr << "nothing to optimize for system no_irs\n";
    return 2;
  }

  const double g = analytic_gamma(cfg, phases, kind);
  doc["system"] = to_string(kind);
  doc["case"] = to_string(kind == SystemKind::dirs_nc ? classify_case_dnc(cfg)
                                                      : classify_case(cfg));
  doc["regime"] = to_string(cfg.regime());
  doc["gamma"] = g;
  doc["rate_bound_bits"] = rate_bound(cfg, g);
  std::cout << doc.dump(2) << "\n";

  const std::string out =
      args.output_path.empty() ? std::string("phases.json") : args.output_path;
  write_file(out, phases_to_json(phases));
  std::filesystem::path trace_path(out);
  trace_path.replace_extension(".trace.csv");
  std::string csv = "iteration,objective\n";
  for (std::size_t i = 0; i < trace_objective.size(); ++i)
    csv += std::to_string(i) + "," + format_number(trace_objective[i]) + "\n";
  write_file(trace_path.string(), csv);
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  const LoadedConfig loaded = load_or_default(args);
  if (!loaded.sweep) {
    std::cerr << "config has no \"sweep\" section\n";
    return 2;
  }
  SweepSpec spec = *loaded.sweep;
  spec.mc_samples = args.samples;
  if (args.system_given)
    spec.systems = {system_kind_from_string(args.system)};
  if (!args.design.empty()) spec.designs = {design_from_string(args.design)};
  const std::uint64_t seed = effective_seed(args, loaded.scenario);
  const std::vector<ResultRow> rows = run_sweep(loaded.scenario, spec, seed);
  const std::string csv = sweep_to_csv(spec, rows);
  if (args.output_path.empty())
    std::cout << csv;
  else
    write_file(args.output_path, csv);
  return 0;
}

int cmd_verify(const CommonArgs& args) {
  const LoadedConfig loaded = load_or_default(args);
  const ScenarioConfig& cfg = loaded.scenario;
  McConfig mc;
  mc.num_samples = args.samples;
  mc.seed = effective_seed(args, cfg);

  std::vector<std::pair<std::string, VerifyResult>> table;
  auto run = [&](const std::string& label, SystemKind kind,
                 const PhaseShifts& ph) {
    VerifyResult r = verify_analytic(cfg, ph, kind, mc);
    if (args.corrupt_analytic) {
      // negative control: a 5% error in the closed form must be caught
      r.analytic *= 1.05;
      const double diff = std::abs(r.analytic - r.mc_mean);
      r.z = r.mc_std_error > 0 ? diff / r.mc_std_error : diff;
      r.pass = r.mc_std_error > 0
                   ? r.z <= 3.0
                   : diff <= 1e-10 * std::max(1.0, std::abs(r.analytic));
    }
    table.emplace_back(label, r);
  };

  CounterRng rng(mc.seed, 0xfeed);
  auto random_ph = [&](int n1, int n2) {
    PhaseShifts ph;
    ph.phi1.resize(n1);
    ph.phi2.resize(n2);
    for (int i = 0; i < n1; ++i) ph.phi1[i] = rng.uniform() * kTwoPi;
    for (int i = 0; i < n2; ++i) ph.phi2[i] = rng.uniform() * kTwoPi;
    return ph;
  };

  run("dirs_c zero phases", SystemKind::dirs_c, zero_phases(cfg));
  run("dirs_c random phases", SystemKind::dirs_c,
      random_ph(cfg.irs1.size(), cfg.irs2.size()));
  run("dirs_nc zero phases", SystemKind::dirs_nc, zero_phases(cfg));
  run("dirs_nc random phases", SystemKind::dirs_nc,
      random_ph(cfg.irs1.size(), cfg.irs2.size()));
  if (cfg.pos_irs1 || cfg.has_sirs_links()) {
    const int t0 = make_sirs_scenario(cfg, SystemKind::sirs_pos1).irs0->size();
    run("sirs_pos1 zero phases", SystemKind::sirs_pos1,
        phases_for(cfg, SystemKind::sirs_pos1, ""));
    run("sirs_pos1 random phases", SystemKind::sirs_pos1, random_ph(t0, 0));
  }
  run("no_irs", SystemKind::no_irs, PhaseShifts{});

  bool all_pass = true;
  std::printf("%-24s %14s %14s %12s %8s  %s\n", "formula", "analytic",
              "mc_mean", "std_error", "z", "result");
  for (const auto& [label, r] : table) {
    all_pass = all_pass && r.pass;
    std::printf("%-24s %14.6e %14.6e %12.4e %8.3f  %s\n", label.c_str(),
                r.analytic, r.mc_mean, r.mc_std_error, r.z,
                r.pass ? "pass" : "FAIL");
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-IRS cooperative link simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "JSON scenario file");
    sub->add_option("--output", args.output_path, "output file path");
    sub->add_option("--seed", args.seed, "RNG seed override")
        ->each([&](const std::string&) { args.seed_given = true; });
    sub->add_option("--samples", args.samples, "Monte-Carlo sample count");
    sub->add_option("--max-iters", args.max_iters, "optimizer iteration cap");
    sub->add_option("--tol", args.tol, "optimizer relative tolerance");
    sub->add_option("--system", args.system,
                    "dirs_c|dirs_nc|sirs_pos1|sirs_pos2|sirs_pos_mid|no_irs")
        ->each([&](const std::string&) { args.system_given = true; });
    sub->add_option("--design", args.design,
                    "optimized|random|pure_los_design|pure_nlos_design");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "case label, regime, analytic power, rate bound");
  add_common(analyze);
  analyze->add_option("--phases", args.phases_path, "phases JSON to evaluate");

  CLI::App* optimize =
      app.add_subcommand("optimize", "optimize phases, write them plus a trace");
  add_common(optimize);

  CLI::App* sweep =
      app.add_subcommand("sweep", "run the config's sweep section to CSV");
  add_common(sweep);

  CLI::App* verify = app.add_subcommand(
      "verify", "check closed forms against Monte-Carlo estimates");
  add_common(verify);
  verify->add_flag("--corrupt-analytic", args.corrupt_analytic,
                   "negative control: perturb closed forms by 5%");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(args);
    if (optimize->parsed()) return cmd_optimize(args);
    if (sweep->parsed()) return cmd_sweep(args);
    if (verify->parsed()) return cmd_verify(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
