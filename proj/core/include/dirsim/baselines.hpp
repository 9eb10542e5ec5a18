#pragma once

#include "dirsim/power.hpp"

namespace dirsim {

/// The cooperative two-IRS system plus its comparison systems: the
/// non-cooperative two-IRS variant (inter-IRS link removed), the single-IRS
/// counterpart at three placements, and the bare direct link.
enum class SystemKind {
  dirs_c,
  dirs_nc,
  sirs_pos1,
  sirs_pos2,
  sirs_pos_mid,
  no_irs,
};

const char* to_string(SystemKind k);
SystemKind system_kind_from_string(const std::string& name);
inline bool is_sirs(SystemKind k) {
  return k == SystemKind::sirs_pos1 || k == SystemKind::sirs_pos2 ||
         k == SystemKind::sirs_pos_mid;
}

/// Case taxonomy without the inter-IRS link: panel l matters iff both hops of
/// its own cascade have a LoS part.
ChannelCase classify_case_dnc(const ScenarioConfig& cfg);

/// Average channel power of the non-cooperative system; identical to the
/// cooperative formula with the inter-IRS fading power set to zero.
double gamma_dnc(const ScenarioConfig& cfg, const PhaseShifts& ph);

/// Each panel aligned with its own cascade against the direct link.
PhaseShifts dnc_phases_aligned(const ScenarioConfig& cfg);
/// Joint convention compensating panel 2 by the inter-array correlation.
PhaseShifts dnc_phases_joint(const ScenarioConfig& cfg);

/// Closed-form phases for the non-cooperative system: per-case alignment in
/// cases 1 and 2; in case 3 both stated conventions are evaluated and the
/// better one is returned. Case 0 yields zeros (phases are irrelevant).
PhaseShifts optimal_phases_dnc(const ScenarioConfig& cfg);

/// Single-IRS scenario derived from a two-IRS one: the lone panel carries
/// T1 + T2 elements and sits at IRS 1, IRS 2, or their midpoint. Explicitly
/// configured single-IRS links win over the preset derivation.
ScenarioConfig make_sirs_scenario(const ScenarioConfig& base, SystemKind kind);

/// Cached single-IRS power evaluator.
class SirsModel {
 public:
  explicit SirsModel(const ScenarioConfig& cfg);

  double gamma(const VectorXd& phi0) const;
  double gamma0() const { return gamma0_; }
  int t() const { return t_; }
  const MatrixXcd& a0() const { return a0_; }
  const VectorXcd& b0() const { return b0_; }

 private:
  int t_s_, t_;
  LinkPower su_, s0_, u0_;
  MatrixXcd a0_;
  VectorXcd b0_;
  double gamma0_;
  double c_quad_, c_lin_;
};

/// Average channel power of the single-IRS system (all regimes).
double gamma_sgl(const ScenarioConfig& cfg, const VectorXd& phi0);

/// Closed-form optimal single-IRS phases; zeros when the cascade has no LoS
/// part (phases are then irrelevant).
VectorXd optimal_phases_sgl(const ScenarioConfig& cfg);

/// Leading term of the (optimal) average channel power of a comparison
/// system as the element counts grow.
double asymptotic_gamma_baseline(SystemKind kind, const ScenarioConfig& cfg,
                                 ChannelCase c, Regime regime);

/// Equivalent channel of the requested system for one realization.
VectorXcd equivalent_channel_baseline(SystemKind kind,
                                      const ChannelRealization& real,
                                      const PhaseShifts& ph);

}  // namespace dirsim
