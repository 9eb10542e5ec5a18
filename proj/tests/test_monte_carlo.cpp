#include <doctest.h>

#include <cmath>

#include "dirsim/monte_carlo.hpp"
#include "dirsim/optimizer.hpp"
#include "dirsim/scenario_io.hpp"
#include "helpers.hpp"

using namespace dirsim;
using namespace dirsim::testing;

TEST_SUITE_BEGIN("monte_carlo");

TEST_CASE("deterministic channels have zero spread and exact means") {
  ScenarioConfig cfg = random_scenario(3, 2, 3, 3);
  set_regime_all(cfg, Regime::pure_los);
  const PhaseShifts ph = random_phases(cfg, 1);
  McConfig mc;
  mc.num_samples = 64;
  mc.seed = 9;
  const McEstimate est = estimate_gamma_mc(cfg, ph, SystemKind::dirs_c, mc);
  CHECK(est.std_error == 0.0);
  CHECK(est.mean ==
        doctest::Approx(gamma_pure_los(cfg, ph)).epsilon(1e-12));
}

TEST_CASE("pure NLoS estimate matches the closed mean") {
  ScenarioConfig cfg = unit_scenario(2, 4, 4);
  set_regime_all(cfg, Regime::pure_nlos);
  McConfig mc;
  mc.num_samples = 100000;
  mc.seed = 4;
  const McEstimate est =
      estimate_gamma_mc(cfg, zero_phases(cfg), SystemKind::dirs_c, mc);
  CHECK(std::abs(est.mean - 50.0) <= 3 * est.std_error);
  CHECK(std::abs(est.mean - 50.0) / 50.0 < 0.01);
}

TEST_CASE("standard error shrinks like the root of the sample count") {
  const ScenarioConfig cfg = random_scenario(8, 2, 4, 4);
  const PhaseShifts ph = zero_phases(cfg);
  McConfig a;
  a.num_samples = 20000;
  a.seed = 11;
  McConfig b = a;
  b.num_samples = 40000;
  const double se_a = estimate_gamma_mc(cfg, ph, SystemKind::dirs_c, a).std_error;
  const double se_b = estimate_gamma_mc(cfg, ph, SystemKind::dirs_c, b).std_error;
  const double shrink = se_b / se_a;
  CHECK(shrink > (1.0 / std::sqrt(2.0)) * 0.8);
  CHECK(shrink < (1.0 / std::sqrt(2.0)) * 1.2);
}

TEST_CASE("estimates are seed-deterministic and thread-count independent") {
  const ScenarioConfig cfg = random_scenario(10, 2, 4, 4);
  const PhaseShifts ph = random_phases(cfg, 0);
  McConfig one;
  one.num_samples = 30000;
  one.seed = 13;
  one.num_threads = 1;
  McConfig four = one;
  four.num_threads = 4;
  const McEstimate ea = estimate_gamma_mc(cfg, ph, SystemKind::dirs_c, one);
  const McEstimate eb = estimate_gamma_mc(cfg, ph, SystemKind::dirs_c, four);
  CHECK(ea.mean == eb.mean);  // bit-identical
  CHECK(ea.std_error == eb.std_error);
  const McEstimate ec = estimate_gamma_mc(cfg, ph, SystemKind::dirs_c, one);
  CHECK(ea.mean == ec.mean);
}

TEST_CASE("rate estimates vanish with power and respect the upper bound") {
  ScenarioConfig cfg = random_scenario(14, 2, 4, 4);
  cfg.tx_power_w = 1e-30;
  cfg.noise_power_w = 1.0;
  McConfig mc;
  mc.num_samples = 2000;
  mc.seed = 6;
  const PhaseShifts ph = zero_phases(cfg);
  CHECK(estimate_rate_mc(cfg, ph, SystemKind::dirs_c, mc).mean < 1e-6);

  cfg.tx_power_w = 2.0;
  McConfig mc2;
  mc2.num_samples = 50000;
  mc2.seed = 6;
  const double mean_rate =
      estimate_rate_mc(cfg, ph, SystemKind::dirs_c, mc2).mean;
  const double bound = rate_bound(cfg, PowerModel(cfg).gamma(ph));
  CHECK(mean_rate <= bound);
}

TEST_CASE("sampled mean rates never exceed the closed-form bound") {
  // concave rate of a random power: the bound direction must hold on any
  // scenario, any system, any phases
  for (std::uint64_t s = 0; s < 4; ++s) {
    ScenarioConfig cfg = random_scenario(60 + s, 2, 4, 4);
    cfg.tx_power_w = 5.0;
    cfg.noise_power_w = 0.5;
    McConfig mc;
    mc.num_samples = 20000;
    mc.seed = s;
    for (SystemKind kind :
         {SystemKind::dirs_c, SystemKind::dirs_nc, SystemKind::no_irs}) {
      const PhaseShifts ph = random_phases(cfg, s + 9);
      const double mean = estimate_rate_mc(cfg, ph, kind, mc).mean;
      const double bound = rate_bound(cfg, analytic_gamma(cfg, ph, kind));
      CHECK(mean <= bound);
    }
  }
}

TEST_CASE("mean rate sits close under the bound at the default deployment") {
  ScenarioConfig cfg = default_scenario();
  OptimizerConfig opt;
  const OptimizerTrace trace = run_optimizer(cfg, opt);
  McConfig mc;
  mc.num_samples = 10000;
  mc.seed = 2;
  const double mc_rate =
      estimate_rate_mc(cfg, trace.phases, SystemKind::dirs_c, mc).mean;
  const double bound = rate_bound(cfg, trace.final_gamma());
  CHECK(mc_rate <= bound);
  CHECK(bound - mc_rate < 0.15);
}

TEST_CASE("random-phase report: invariant cases, dominance, reproducibility") {
  ScenarioConfig c0 = unit_scenario(2, 4, 4);
  set_k_all(c0, 0.0);
  const RandomPhaseReport r0 =
      random_phase_baseline(c0, SystemKind::dirs_c, 25, 3);
  CHECK(r0.mean_gamma == doctest::Approx(r0.best_gamma).epsilon(1e-15));
  CHECK(r0.best_gamma == doctest::Approx(50.0).epsilon(1e-15));

  const ScenarioConfig cfg = random_scenario(19, 2, 4, 4);
  OptimizerConfig opt;
  const double g_star = run_optimizer(cfg, opt).final_gamma();
  const RandomPhaseReport rp =
      random_phase_baseline(cfg, SystemKind::dirs_c, 50, 3);
  CHECK(rp.mean_gamma <= g_star);
  CHECK(rp.best_gamma <= g_star * (1 + 1e-9));

  const RandomPhaseReport rp2 =
      random_phase_baseline(cfg, SystemKind::dirs_c, 50, 3);
  CHECK(rp.mean_gamma == rp2.mean_gamma);
  CHECK(rp.best_gamma == rp2.best_gamma);
}

TEST_CASE("verification harness: pass, negative control, pure regimes") {
  const ScenarioConfig cfg = random_scenario(23, 4, 4, 4);
  const PhaseShifts ph = random_phases(cfg, 7);
  McConfig mc;
  mc.num_samples = 100000;
  mc.seed = 17;
  const VerifyResult ok = verify_analytic(cfg, ph, SystemKind::dirs_c, mc);
  CHECK(ok.pass);
  CHECK(ok.z <= 3.0);

  // a 5% corruption of the closed form must be flagged
  const McEstimate est = estimate_gamma_mc(cfg, ph, SystemKind::dirs_c, mc);
  const double corrupted = ok.analytic * 1.05;
  const double z_bad = std::abs(corrupted - est.mean) / est.std_error;
  CHECK(z_bad > 3.0);

  ScenarioConfig los = cfg;
  set_regime_all(los, Regime::pure_los);
  McConfig tiny;
  tiny.num_samples = 16;
  tiny.seed = 1;
  const VerifyResult det = verify_analytic(los, ph, SystemKind::dirs_c, tiny);
  CHECK(det.pass);
  CHECK(det.mc_std_error == 0.0);
}

TEST_SUITE_END();
