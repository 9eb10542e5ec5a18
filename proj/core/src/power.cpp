#include "dirsim/power.hpp"

#include <cmath>
#include <stdexcept>

#include "dirsim/steering.hpp"

namespace dirsim {

namespace {

VectorXd element_angles(const VectorXcd& v) {
  VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = std::arg(v[i]);
  return out;
}

}  // namespace

FadingPowers fading_powers(const ScenarioConfig& cfg) {
  auto lp = [](const LinkFading& f) {
    return LinkPower{f.los_power(), f.nlos_power()};
  };
  FadingPowers pw;
  pw.su = lp(cfg.bs_user.fading);
  pw.s1 = lp(cfg.bs_irs1.fading);
  pw.s2 = lp(cfg.bs_irs2.fading);
  pw.x12 = lp(cfg.inter_irs.fading);
  pw.u1 = lp(cfg.irs1_user.fading);
  pw.u2 = lp(cfg.irs2_user.fading);
  if (cfg.has_sirs_links()) {
    pw.s0 = lp(cfg.bs_irs0->fading);
    pw.u0 = lp(cfg.irs0_user->fading);
  }
  return pw;
}

LosGeometry los_geometry(const ScenarioConfig& cfg) {
  const double dol = cfg.d_over_lambda;
  auto dep = [&](const LinkAngles& a, const ArraySpec& arr) {
    return steering_vector(a.aod_h, a.aod_v, arr, dol);
  };
  auto arr = [&](const LinkAngles& a, const ArraySpec& panel) {
    return steering_vector(a.aoa_h, a.aoa_v, panel, dol);
  };

  const VectorXcd a_dep_s1 = dep(cfg.bs_irs1.angles, cfg.bs);
  const VectorXcd a_dep_s2 = dep(cfg.bs_irs2.angles, cfg.bs);
  const VectorXcd a_dep_su = dep(cfg.bs_user.angles, cfg.bs);
  const VectorXcd a_dep_12 = dep(cfg.inter_irs.angles, cfg.irs1);
  const VectorXcd a_dep_1u = dep(cfg.irs1_user.angles, cfg.irs1);
  const VectorXcd a_dep_2u = dep(cfg.irs2_user.angles, cfg.irs2);
  const VectorXcd a_arr_s1 = arr(cfg.bs_irs1.angles, cfg.irs1);
  const VectorXcd a_arr_s2 = arr(cfg.bs_irs2.angles, cfg.irs2);
  const VectorXcd a_arr_12 = arr(cfg.inter_irs.angles, cfg.irs2);

  LosGeometry g;
  g.delta_s1_1u = element_angles(a_dep_1u.conjugate().cwiseProduct(a_arr_s1));
  g.delta_s1_12 = element_angles(a_dep_12.conjugate().cwiseProduct(a_arr_s1));
  g.delta_12_2u = element_angles(a_dep_2u.conjugate().cwiseProduct(a_arr_12));
  g.delta_s2_2u = element_angles(a_dep_2u.conjugate().cwiseProduct(a_arr_s2));
  g.r_s1_su = a_dep_s1.dot(a_dep_su);  // Eigen dot conjugates the left side
  g.r_s2_su = a_dep_s2.dot(a_dep_su);
  g.r_s1_s2 = a_dep_s1.dot(a_dep_s2);
  g.r_s2_12 = a_arr_s2.dot(a_arr_12);
  g.r_12_1u = a_dep_12.dot(a_dep_1u);

  if (cfg.has_sirs_links()) {
    const VectorXcd a_dep_s0 = dep(cfg.bs_irs0->angles, cfg.bs);
    const VectorXcd a_arr_s0 = arr(cfg.bs_irs0->angles, *cfg.irs0);
    const VectorXcd a_dep_0u = dep(cfg.irs0_user->angles, *cfg.irs0);
    g.delta_s0_0u = element_angles(a_dep_0u.conjugate().cwiseProduct(a_arr_s0));
    g.r_s0_su = a_dep_s0.dot(a_dep_su);
  }
  return g;
}

CouplingMatrices coupling_matrices(const ScenarioConfig& cfg) {
  const double dol = cfg.d_over_lambda;
  const LosComponents los = los_components(cfg);
  const VectorXcd a_dep_12 = steering_vector(
      cfg.inter_irs.angles.aod_h, cfg.inter_irs.angles.aod_v, cfg.irs1, dol);
  const VectorXcd a_arr_12 = steering_vector(
      cfg.inter_irs.angles.aoa_h, cfg.inter_irs.angles.aoa_v, cfg.irs2, dol);
  const VectorXcd a_arr_s1 = steering_vector(
      cfg.bs_irs1.angles.aoa_h, cfg.bs_irs1.angles.aoa_v, cfg.irs1, dol);

  const VectorXcd h1u_c = los.h_1u.conjugate();
  const VectorXcd h2u_c = los.h_2u.conjugate();
  const VectorXcd a12d_c = a_dep_12.conjugate();
  const VectorXcd s1_su = los.h_s1 * los.h_su;

  CouplingMatrices cm;
  cm.A11 = h1u_c.asDiagonal() * los.h_s1 * los.h_s1.adjoint() *
           los.h_1u.asDiagonal();
  cm.A12 = a12d_c.asDiagonal() * los.h_s1 * los.h_s1.adjoint() *
           a_dep_12.asDiagonal();
  cm.A21 = h2u_c.asDiagonal() * los.h_s2 * los.h_s2.adjoint() *
           los.h_2u.asDiagonal();
  cm.A22 = h2u_c.asDiagonal() * los.h_12 * los.h_12.adjoint() *
           los.h_2u.asDiagonal();
  cm.A3 = h2u_c.asDiagonal() * los.h_12 * a_arr_s1.asDiagonal();
  cm.b11 = h1u_c.cwiseProduct(s1_su);
  cm.b12 = a12d_c.cwiseProduct(los.h_s1 * (los.h_s2.adjoint() * a_arr_12));
  cm.b21 = h2u_c.cwiseProduct(los.h_s2 * los.h_su);
  cm.b22 = h2u_c.cwiseProduct(los.h_12 * los.h_1u);
  cm.B1 = h2u_c.asDiagonal() * los.h_12;
  cm.B2 = los.h_s1 * los.h_s1.adjoint() * los.h_1u.asDiagonal();
  cm.B3 = los.h_s1 * los.h_s2.adjoint() * los.h_2u.asDiagonal();
  cm.B4 = h2u_c.asDiagonal() * los.h_12 * s1_su.asDiagonal();
  cm.B5 = h2u_c.asDiagonal() * los.h_s2 * los.h_s1.adjoint() *
          los.h_1u.asDiagonal();
  return cm;
}

PowerModel::PowerModel(const ScenarioConfig& cfg, bool drop_inter_irs)
    : t_s_(cfg.bs.size()), t1_(cfg.irs1.size()), t2_(cfg.irs2.size()) {
  pw_ = fading_powers(cfg);
  if (drop_inter_irs) pw_ = pw_.without_inter_irs();
  cm_ = coupling_matrices(cfg);

  const auto& p = pw_;
  gamma0_ =
      p.su.total() * t_s_ +
      (p.s1.nlos * p.u1.los + p.s1.los * p.u1.nlos + p.s1.nlos * p.u1.nlos) *
          t_s_ * t1_ +
      (p.s2.nlos * p.u2.los + p.s2.los * p.u2.nlos + p.s2.nlos * p.u2.nlos) *
          t_s_ * t2_ +
      (p.s1.nlos * p.x12.los * p.u2.nlos + p.s1.los * p.x12.nlos * p.u2.los +
       p.s1.los * p.x12.nlos * p.u2.nlos + p.s1.nlos * p.x12.nlos * p.u2.los +
       p.s1.nlos * p.x12.nlos * p.u2.nlos) *
          t_s_ * t1_ * t2_;

  c_a11_ = p.s1.los * p.u1.los;
  c_a12_ = p.s1.los * p.x12.los * p.u2.nlos * t2_;
  c_a21_ = p.s2.los * p.u2.los;
  c_a22_ = p.s1.nlos * p.x12.los * p.u2.los * t_s_;
  c_quartic_ = p.s1.los * p.x12.los * p.u2.los * t_s_;
  c_b11_ = std::sqrt(p.su.los * p.s1.los * p.u1.los);
  c_b12_ = std::sqrt(p.s2.los * p.u2.nlos * p.s1.los * p.x12.los * p.u2.nlos);
  c_b21_ = std::sqrt(p.su.los * p.s2.los * p.u2.los);
  c_b22_ =
      std::sqrt(p.s1.nlos * p.u1.los * p.s1.nlos * p.x12.los * p.u2.los) * t_s_;
  c_cross_b2_ = std::sqrt(p.s1.los * p.u1.los * p.s1.los * p.x12.los * p.u2.los);
  c_cross_b3_ = std::sqrt(p.s2.los * p.u2.los * p.s1.los * p.x12.los * p.u2.los);
  c_cross_b4_ = std::sqrt(p.su.los * p.s1.los * p.x12.los * p.u2.los);
  c_cross_b5_ = std::sqrt(p.s1.los * p.u1.los * p.s2.los * p.u2.los);
}

double PowerModel::gamma(const PhaseShifts& ph) const {
  if (ph.phi1.size() != t1_ || ph.phi2.size() != t2_)
    throw std::invalid_argument("gamma: phase vector length mismatch");
  const VectorXcd v1 = unit_phasors(ph.phi1);
  const VectorXcd v2 = unit_phasors(ph.phi2);

  // .dot conjugates its left argument, matching the v^H convention
  double g = gamma0_;
  if (c_a11_ != 0.0) g += c_a11_ * std::real(v1.dot(cm_.A11 * v1));
  if (c_a12_ != 0.0) g += c_a12_ * std::real(v1.dot(cm_.A12 * v1));
  if (c_a21_ != 0.0) g += c_a21_ * std::real(v2.dot(cm_.A21 * v2));
  if (c_a22_ != 0.0) g += c_a22_ * std::real(v2.dot(cm_.A22 * v2));
  if (c_quartic_ != 0.0) {
    // rank-1 quartic term |v2^H A3 v1^*|^2
    const cxd z = v2.dot(cm_.A3 * v1.conjugate());
    g += c_quartic_ * std::norm(z);
  }

  cxd cross = 0.0;
  if (c_b11_ != 0.0) cross += c_b11_ * v1.dot(cm_.b11);
  if (c_b12_ != 0.0) cross += c_b12_ * v1.dot(cm_.b12);
  if (c_b21_ != 0.0) cross += c_b21_ * v2.dot(cm_.b21);
  if (c_b22_ != 0.0) cross += c_b22_ * v2.dot(cm_.b22);
  if (c_cross_b2_ != 0.0 || c_cross_b3_ != 0.0) {
    const VectorXcd w = (v2.adjoint() * cm_.B1).transpose();  // (v2^H B1)^T
    if (c_cross_b2_ != 0.0)
      cross += c_cross_b2_ * v1.dot(w.cwiseProduct(cm_.B2 * v1));
    if (c_cross_b3_ != 0.0)
      cross += c_cross_b3_ * v1.dot(w.cwiseProduct(cm_.B3 * v2));
  }
  if (c_cross_b4_ != 0.0) cross += c_cross_b4_ * v2.dot(cm_.B4 * v1.conjugate());
  if (c_cross_b5_ != 0.0) cross += c_cross_b5_ * v2.dot(cm_.B5 * v1);
  g += 2.0 * std::real(cross);
  return g;
}

ChannelCase classify_case(const ScenarioConfig& cfg) {
  const FadingPowers p = fading_powers(cfg);
  const bool phi1_active = p.s1.los > 0.0 && (p.u1.los > 0.0 || p.x12.los > 0.0);
  const bool phi2_active = p.u2.los > 0.0 && (p.x12.los > 0.0 || p.s2.los > 0.0);
  if (phi1_active && phi2_active) return ChannelCase::case3;
  if (phi1_active) return ChannelCase::case1;
  if (phi2_active) return ChannelCase::case2;
  return ChannelCase::case0;
}

std::pair<double, ChannelCase> gamma(const ScenarioConfig& cfg,
                                     const PhaseShifts& ph) {
  if (cfg.regime() != Regime::general)
    throw std::invalid_argument(
        "gamma: scenario is in a pure regime, use the dedicated evaluator");
  return {PowerModel(cfg).gamma(ph), classify_case(cfg)};
}

double gamma_pure_los(const ScenarioConfig& cfg, const PhaseShifts& ph) {
  if (cfg.regime() != Regime::pure_los)
    throw std::invalid_argument("gamma_pure_los: scenario is not pure LoS");
  return PowerModel(cfg).gamma(ph);
}

double gamma_pure_nlos(const ScenarioConfig& cfg) {
  if (cfg.regime() != Regime::pure_nlos)
    throw std::invalid_argument("gamma_pure_nlos: scenario is not pure NLoS");
  const double a_su = cfg.bs_user.fading.alpha;
  const double a_s1 = cfg.bs_irs1.fading.alpha;
  const double a_s2 = cfg.bs_irs2.fading.alpha;
  const double a_12 = cfg.inter_irs.fading.alpha;
  const double a_1u = cfg.irs1_user.fading.alpha;
  const double a_2u = cfg.irs2_user.fading.alpha;
  const double ts = cfg.bs.size(), t1 = cfg.irs1.size(), t2 = cfg.irs2.size();
  return a_su * ts + a_s1 * a_1u * ts * t1 + a_s2 * a_2u * ts * t2 +
         a_s1 * a_12 * a_2u * ts * t1 * t2;
}

double rate_bound(const ScenarioConfig& cfg, double gamma_value) {
  if (!(gamma_value >= 0.0))
    throw std::invalid_argument("rate_bound: gamma must be nonnegative");
  return std::log2(1.0 + cfg.snr_scale() * gamma_value);
}

double asymptotic_gamma_dirc(const ScenarioConfig& cfg, ChannelCase c,
                             Regime regime) {
  const FadingPowers p = fading_powers(cfg);
  const double ts = cfg.bs.size(), t1 = cfg.irs1.size(), t2 = cfg.irs2.size();
  if (regime == Regime::pure_nlos) c = ChannelCase::case0;
  if (regime == Regime::pure_los) c = ChannelCase::case3;
  switch (c) {
    case ChannelCase::case0:
      return (p.s1.nlos * p.x12.los * p.u2.nlos +
              p.s1.los * p.x12.nlos * p.u2.los +
              p.s1.los * p.x12.nlos * p.u2.nlos +
              p.s1.nlos * p.x12.nlos * p.u2.los +
              p.s1.nlos * p.x12.nlos * p.u2.nlos) *
             ts * t1 * t2;
    case ChannelCase::case1:
      return p.s1.los * p.x12.los * p.u2.nlos * ts * t1 * t1 * t2;
    case ChannelCase::case2:
      return p.s1.nlos * p.x12.los * p.u2.los * ts * t1 * t2 * t2;
    default:
      return p.s1.los * p.x12.los * p.u2.los * ts * t1 * t1 * t2 * t2;
  }
}

PhaseShifts zero_phases(const ScenarioConfig& cfg) {
  PhaseShifts ph;
  ph.phi1 = VectorXd::Zero(cfg.irs1.size());
  ph.phi2 = VectorXd::Zero(cfg.irs2.size());
  return ph;
}

}  // namespace dirsim
