#pragma once

#include <cmath>

#include "dirsim/power.hpp"
#include "dirsim/rng.hpp"
#include "dirsim/steering.hpp"

namespace dirsim::testing {

inline void set_link(LinkParams& link, double alpha, double k,
                     Regime regime = Regime::general) {
  link.fading.alpha = alpha;
  link.fading.rician_k = k;
  link.fading.regime = regime;
}

/// alpha = 1, K = 0, zero angles everywhere; unit SNR scale.
inline ScenarioConfig unit_scenario(int ts, int t1, int t2) {
  ScenarioConfig cfg;
  cfg.bs = square_array(ts);
  cfg.irs1 = square_array(t1);
  cfg.irs2 = square_array(t2);
  LinkParams* links[] = {&cfg.bs_irs1,   &cfg.bs_irs2,   &cfg.inter_irs,
                         &cfg.bs_user,   &cfg.irs1_user, &cfg.irs2_user};
  for (auto* l : links) set_link(*l, 1.0, 0.0);
  return cfg;
}

inline void set_regime_all(ScenarioConfig& cfg, Regime regime) {
  LinkParams* links[] = {&cfg.bs_irs1,   &cfg.bs_irs2,   &cfg.inter_irs,
                         &cfg.bs_user,   &cfg.irs1_user, &cfg.irs2_user};
  for (auto* l : links) l->fading.regime = regime;
  if (cfg.bs_irs0) cfg.bs_irs0->fading.regime = regime;
  if (cfg.irs0_user) cfg.irs0_user->fading.regime = regime;
}

inline void set_k_all(ScenarioConfig& cfg, double k) {
  LinkParams* links[] = {&cfg.bs_irs1,   &cfg.bs_irs2,   &cfg.inter_irs,
                         &cfg.bs_user,   &cfg.irs1_user, &cfg.irs2_user};
  for (auto* l : links) {
    l->fading.regime = Regime::general;
    l->fading.rician_k = k;
  }
}

/// Random angles, log-spread fading powers, Rician factors in [0.5, 8].
inline ScenarioConfig random_scenario(std::uint64_t seed, int ts, int t1,
                                      int t2) {
  CounterRng rng(seed, 0x5ce9a51c);
  ScenarioConfig cfg = unit_scenario(ts, t1, t2);
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

inline PhaseShifts random_phases(const ScenarioConfig& cfg,
                                 std::uint64_t seed) {
  CounterRng rng(seed, 0xf0);
  PhaseShifts ph;
  ph.phi1.resize(cfg.irs1.size());
  ph.phi2.resize(cfg.irs2.size());
  for (Eigen::Index i = 0; i < ph.phi1.size(); ++i)
    ph.phi1[i] = rng.uniform() * kTwoPi;
  for (Eigen::Index i = 0; i < ph.phi2.size(); ++i)
    ph.phi2[i] = rng.uniform() * kTwoPi;
  return ph;
}

}  // namespace dirsim::testing
