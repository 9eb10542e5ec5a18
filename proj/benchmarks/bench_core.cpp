#include <benchmark/benchmark.h>

#include <cmath>

#include "dirsim/monte_carlo.hpp"
#include "dirsim/optimizer.hpp"
#include "dirsim/rng.hpp"
#include "dirsim/steering.hpp"

namespace {

using namespace dirsim;

ScenarioConfig bench_scenario(int ts, int t1, int t2) {
  CounterRng rng(7, 0x5ce9a51c);
  ScenarioConfig cfg;
  cfg.bs = square_array(ts);
  cfg.irs1 = square_array(t1);
  cfg.irs2 = square_array(t2);
  LinkParams* links[] = {&cfg.bs_irs1,   &cfg.bs_irs2,   &cfg.inter_irs,
                         &cfg.bs_user,   &cfg.irs1_user, &cfg.irs2_user};
  for (auto* l : links) {
    l->angles.aod_h = rng.uniform() * kTwoPi;
    l->angles.aod_v = rng.uniform() * kTwoPi;
    l->angles.aoa_h = rng.uniform() * kTwoPi;
    l->angles.aoa_v = rng.uniform() * kTwoPi;
    l->fading.alpha = std::pow(10.0, -2.0 * rng.uniform());
    l->fading.rician_k = 0.5 + 7.5 * rng.uniform();
  }
  return cfg;
}

PhaseShifts bench_phases(const ScenarioConfig& cfg) {
  CounterRng rng(9, 1);
  PhaseShifts ph;
  ph.phi1.resize(cfg.irs1.size());
  ph.phi2.resize(cfg.irs2.size());
  for (Eigen::Index i = 0; i < ph.phi1.size(); ++i)
    ph.phi1[i] = rng.uniform() * kTwoPi;
  for (Eigen::Index i = 0; i < ph.phi2.size(); ++i)
    ph.phi2[i] = rng.uniform() * kTwoPi;
  return ph;
}

void BM_GammaEval(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const ScenarioConfig cfg = bench_scenario(4, t / 2, t / 2);
  const PowerModel model(cfg);
  const PhaseShifts ph = bench_phases(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(model.gamma(ph));
  state.counters["elements"] = t;
}
BENCHMARK(BM_GammaEval)->Arg(32)->Arg(128)->Arg(512);

void BM_PowerModelBuild(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const ScenarioConfig cfg = bench_scenario(4, t / 2, t / 2);
  for (auto _ : state) benchmark::DoNotOptimize(PowerModel(cfg));
}
BENCHMARK(BM_PowerModelBuild)->Arg(32)->Arg(128)->Arg(512);

void BM_AlternatingSweepPass(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const ScenarioConfig cfg = bench_scenario(4, t / 2, t / 2);
  const PowerModel model(cfg);
  PhaseShifts ph = bench_phases(cfg);
  for (auto _ : state) {
    const CdCoefficients c1 =
        build_cd_coefficients(model, ph, CdMode::case3_irs1);
    for (int i = 0; i < ph.phi1.size(); ++i)
      ph.phi1[i] = cd_update(c1, ph.phi1, i);
    const CdCoefficients c2 =
        build_cd_coefficients(model, ph, CdMode::case3_irs2);
    for (int i = 0; i < ph.phi2.size(); ++i)
      ph.phi2[i] = cd_update(c2, ph.phi2, i);
    benchmark::DoNotOptimize(ph.phi2[0]);
  }
  state.counters["elements"] = t;
}
BENCHMARK(BM_AlternatingSweepPass)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_MonteCarloGamma(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const ScenarioConfig cfg = bench_scenario(4, t / 2, t / 2);
  const PhaseShifts ph = bench_phases(cfg);
  McConfig mc;
  mc.num_samples = 2000;
  mc.num_threads = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    mc.seed = ++seed;
    benchmark::DoNotOptimize(
        estimate_gamma_mc(cfg, ph, SystemKind::dirs_c, mc));
  }
  state.SetItemsProcessed(state.iterations() * mc.num_samples);
}
BENCHMARK(BM_MonteCarloGamma)->Arg(32)->Arg(128);

void BM_ClosedFormJoint(benchmark::State& state) {
  ScenarioConfig cfg = bench_scenario(4, 256, 256);
  cfg.bs_irs2.fading.rician_k = 0.0;
  cfg.irs1_user.fading.rician_k = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_case3(cfg));
}
BENCHMARK(BM_ClosedFormJoint);

}  // namespace

BENCHMARK_MAIN();
