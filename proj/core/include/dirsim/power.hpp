#pragma once

#include "dirsim/channel.hpp"
#include "dirsim/types.hpp"

namespace dirsim {

/// Which panels' phases influence the average channel power of the
/// cooperative two-IRS system, decided by which LoS components vanish.
enum class ChannelCase { case0 = 0, case1 = 1, case2 = 2, case3 = 3 };

const char* to_string(ChannelCase c);

struct LinkPower {
  double los = 0.0;
  double nlos = 0.0;
  double total() const { return los + nlos; }
};

/// Large-scale powers of the LoS and NLoS parts of every link; products of
/// these give the cascaded-channel powers.
struct FadingPowers {
  LinkPower su, s1, s2, x12, u1, u2;
  LinkPower s0, u0;  // single-IRS links, zero unless configured

  /// Counterpart with the inter-IRS link removed.
  FadingPowers without_inter_irs() const {
    FadingPowers out = *this;
    out.x12 = LinkPower{};
    return out;
  }
};

FadingPowers fading_powers(const ScenarioConfig& cfg);

/// Deterministic steering geometry: per-element phase sums over the two hops
/// of a cascade, and correlation scalars between steering vectors that share
/// an array.
struct LosGeometry {
  VectorXd delta_s1_1u, delta_s1_12;  // length T1
  VectorXd delta_12_2u, delta_s2_2u;  // length T2
  cxd r_s1_su, r_s2_su, r_s1_s2, r_s2_12, r_12_1u;
  VectorXd delta_s0_0u;  // length T, empty unless single-IRS links configured
  cxd r_s0_su{};
};

LosGeometry los_geometry(const ScenarioConfig& cfg);

/// Phase-independent couplers between the LoS cascades. The A blocks are
/// Hermitian PSD; B1 has unit-modulus entries.
struct CouplingMatrices {
  MatrixXcd A11, A12;  // T1 x T1
  MatrixXcd A21, A22;  // T2 x T2
  MatrixXcd A3;        // T2 x T1
  VectorXcd b11, b12;  // T1
  VectorXcd b21, b22;  // T2
  MatrixXcd B1, B4, B5;  // T2 x T1
  MatrixXcd B2;          // T1 x T1
  MatrixXcd B3;          // T1 x T2
};

CouplingMatrices coupling_matrices(const ScenarioConfig& cfg);

/// Cached per-scenario evaluator of the average channel power: the coupling
/// matrices and fading-power coefficients are assembled once, and phases
/// enter every later evaluation only through their unit phasors. Terms whose
/// fading coefficient is exactly zero are skipped, so phase invariance in the
/// degenerate cases is exact.
class PowerModel {
 public:
  explicit PowerModel(const ScenarioConfig& cfg, bool drop_inter_irs = false);

  double gamma(const PhaseShifts& ph) const;
  double gamma0() const { return gamma0_; }

  int t_s() const { return t_s_; }
  int t1() const { return t1_; }
  int t2() const { return t2_; }
  const FadingPowers& powers() const { return pw_; }
  const CouplingMatrices& couplings() const { return cm_; }

  /// Coefficients of the phase-dependent terms (zero when the corresponding
  /// LoS cascade is absent).
  double c_a11() const { return c_a11_; }
  double c_a12() const { return c_a12_; }
  double c_a21() const { return c_a21_; }
  double c_a22() const { return c_a22_; }
  double c_quartic() const { return c_quartic_; }
  double c_b11() const { return c_b11_; }
  double c_b12() const { return c_b12_; }
  double c_b21() const { return c_b21_; }
  double c_b22() const { return c_b22_; }
  double c_cross_b2() const { return c_cross_b2_; }
  double c_cross_b3() const { return c_cross_b3_; }
  double c_cross_b4() const { return c_cross_b4_; }
  double c_cross_b5() const { return c_cross_b5_; }

 private:
  int t_s_, t1_, t2_;
  FadingPowers pw_;
  CouplingMatrices cm_;
  double gamma0_;
  double c_a11_, c_a12_, c_a21_, c_a22_, c_quartic_;
  double c_b11_, c_b12_, c_b21_, c_b22_;
  double c_cross_b2_, c_cross_b3_, c_cross_b4_, c_cross_b5_;
};

/// Case taxonomy of the cooperative system: panel l matters iff a LoS path
/// reaches it and a LoS path leaves it.
ChannelCase classify_case(const ScenarioConfig& cfg);

/// Average channel power in the general regime, with its case label.
/// Use gamma_pure_los / gamma_pure_nlos when a pure regime is configured.
std::pair<double, ChannelCase> gamma(const ScenarioConfig& cfg,
                                     const PhaseShifts& ph);

/// Average channel power when every link is pure LoS (deterministic channel).
double gamma_pure_los(const ScenarioConfig& cfg, const PhaseShifts& ph);

/// Average channel power when every link is pure NLoS; independent of phases.
double gamma_pure_nlos(const ScenarioConfig& cfg);

/// Jensen upper bound on the average achievable rate, bits/s/Hz.
double rate_bound(const ScenarioConfig& cfg, double gamma_value);

/// Leading term of the (optimal) average channel power as the element counts
/// grow, for the given case and regime.
double asymptotic_gamma_dirc(const ScenarioConfig& cfg, ChannelCase c,
                             Regime regime);

/// Zero phase vectors sized for the scenario.
PhaseShifts zero_phases(const ScenarioConfig& cfg);

inline const char* to_string(ChannelCase c) {
  switch (c) {
    case ChannelCase::case0:
      return "case0";
    case ChannelCase::case1:
      return "case1";
    case ChannelCase::case2:
      return "case2";
    default:
      return "case3";
  }
}

}  // namespace dirsim
