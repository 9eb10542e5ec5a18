#pragma once

#include <string>

#include "dirsim/baselines.hpp"

namespace dirsim {

struct McConfig {
  long long num_samples = 100000;
  std::uint64_t seed = 1;
  int batch_size = 4096;
  int num_threads = 0;  // 0 = hardware concurrency
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long num_samples = 0;
};

/// Sample mean of the equivalent channel's squared norm over independent
/// NLoS draws. Batches map to fixed counter-based streams, and per-batch
/// sums are reduced in batch order, so the result is bit-identical for a
/// given (config, seed) regardless of thread count.
McEstimate estimate_gamma_mc(const ScenarioConfig& cfg, const PhaseShifts& ph,
                             SystemKind kind, const McConfig& mc);

/// Sample mean of log2(1 + (P/sigma^2) * ||h_e||^2).
McEstimate estimate_rate_mc(const ScenarioConfig& cfg, const PhaseShifts& ph,
                            SystemKind kind, const McConfig& mc);

struct RandomPhaseReport {
  double mean_gamma = 0.0;
  double best_gamma = 0.0;
  PhaseShifts best_phases;
  int num_draws = 0;
};

/// Analytic average power over uniformly random phase draws.
RandomPhaseReport random_phase_baseline(const ScenarioConfig& cfg,
                                        SystemKind kind, int num_draws,
                                        std::uint64_t seed);

struct VerifyResult {
  std::string label;
  double analytic = 0.0;
  double mc_mean = 0.0;
  double mc_std_error = 0.0;
  double z = 0.0;
  bool pass = false;
};

/// Checks the closed-form average power against its Monte-Carlo estimate:
/// pass iff the z-score is at most 3. Deterministic regimes (zero sampling
/// variance) fall back to an equality check at 1e-10 relative.
VerifyResult verify_analytic(const ScenarioConfig& cfg, const PhaseShifts& ph,
                             SystemKind kind, const McConfig& mc);

/// Closed-form average power of any system kind at the given phases
/// (phi1 carries the single panel's phases for single-IRS kinds).
double analytic_gamma(const ScenarioConfig& cfg, const PhaseShifts& ph,
                      SystemKind kind);

}  // namespace dirsim
