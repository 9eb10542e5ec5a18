#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dirsim/power.hpp"

namespace dirsim {

enum class InitMode { zeros, random, given };

struct OptimizerConfig {
  int max_iterations = 500;
  double rel_tolerance = 1e-8;
  InitMode init = InitMode::zeros;
  std::uint64_t init_seed = 0;
  PhaseShifts init_phases;  // used when init == given
  double psi = 0.0;         // free parameter of the joint closed-form family
};

/// Which single-coordinate subproblem the (matrix, vector) pair describes.
enum class CdMode { case1, case2, case3_irs1, case3_irs2, pure_los_irs2 };

/// Hermitian quadratic + linear coefficients of the per-coordinate objective:
/// maximizing gamma over one phase reduces to aligning exp(j*phi_t) against
/// sum_{k != t} M(t,k) exp(-j*phi_k) + v(t).
struct CdCoefficients {
  CdMode mode;
  MatrixXcd matrix;
  VectorXcd vector;
};

enum class OptimizeMethod {
  none,
  closed_form_case1,
  closed_form_case2,
  closed_form_case3,
  coordinate_descent,
  block_coordinate_descent,
};

const char* to_string(OptimizeMethod m);

struct OptimizerTrace {
  std::vector<double> objective;  // initial point first, then one per pass
  PhaseShifts phases;
  bool converged = false;
  int iterations_used = 0;
  OptimizeMethod method = OptimizeMethod::none;
  ChannelCase channel_case = ChannelCase::case0;
  Regime regime = Regime::general;
  double final_gamma() const { return objective.back(); }
};

/// Requested closed form does not cover the scenario's fading pattern.
struct NotApplicableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Globally optimal phases for case 1 when the panel has a single dominant
/// LoS route (no LoS to the user, or no LoS inter-IRS link).
PhaseShifts closed_form_case1(const ScenarioConfig& cfg);

/// Case-2 counterpart of closed_form_case1.
PhaseShifts closed_form_case2(const ScenarioConfig& cfg);

/// Globally optimal joint phases for case 3 in its two degenerate fading
/// patterns; optimal for every real psi, which shifts the whole family.
PhaseShifts closed_form_case3(const ScenarioConfig& cfg, double psi = 0.0);

CdCoefficients build_cd_coefficients(const PowerModel& model,
                                     const PhaseShifts& ph, CdMode mode);

/// Exact single-coordinate maximizer given the other phases. Keeps the
/// current phase when the alignment target is numerically zero (any phase is
/// then optimal).
double cd_update(const CdCoefficients& coeffs, const VectorXd& phases, int t);

/// Exact block maximizer over the first panel's phases in the pure LoS
/// regime, with the second panel fixed.
VectorXd bcd_block_phi1(const ScenarioConfig& cfg, const VectorXd& phi2);

/// Dispatches to the closed forms where they are globally optimal and to the
/// coordinate-descent algorithms elsewhere; no-op for phase-invariant cases.
OptimizerTrace run_optimizer(const ScenarioConfig& cfg,
                             const OptimizerConfig& opt = {});

/// Forces the iterative path (per-panel sweeps in cases 1/2, alternating
/// panel sweeps in case 3, block descent in the pure LoS regime) even where
/// a closed form exists; used to certify the iterations against the closed
/// forms.
OptimizerTrace run_iterative_optimizer(const ScenarioConfig& cfg,
                                       const OptimizerConfig& opt = {});

struct PowerReport {
  ChannelCase channel_case = ChannelCase::case0;
  Regime regime = Regime::general;
  double gamma = 0.0;
  double rate_bound_bits = 0.0;
  OptimizerTrace trace;
};

/// Bundles an optimizer result with the scenario's power and rate bound.
PowerReport make_power_report(const ScenarioConfig& cfg, OptimizerTrace trace);

inline const char* to_string(OptimizeMethod m) {
  switch (m) {
    case OptimizeMethod::closed_form_case1:
      return "closed_form_case1";
    case OptimizeMethod::closed_form_case2:
      return "closed_form_case2";
    case OptimizeMethod::closed_form_case3:
      return "closed_form_case3";
    case OptimizeMethod::coordinate_descent:
      return "coordinate_descent";
    case OptimizeMethod::block_coordinate_descent:
      return "block_coordinate_descent";
    default:
      return "none";
  }
}

}  // namespace dirsim
