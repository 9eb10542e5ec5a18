#include "dirsim/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "dirsim/steering.hpp"

namespace dirsim {

const char* to_string(SystemKind k) {
  switch (k) {
    case SystemKind::dirs_c:
      return "dirs_c";
    case SystemKind::dirs_nc:
      return "dirs_nc";
    case SystemKind::sirs_pos1:
      return "sirs_pos1";
    case SystemKind::sirs_pos2:
      return "sirs_pos2";
    case SystemKind::sirs_pos_mid:
      return "sirs_pos_mid";
    default:
      return "no_irs";
  }
}

SystemKind system_kind_from_string(const std::string& name) {
  if (name == "dirs_c") return SystemKind::dirs_c;
  if (name == "dirs_nc") return SystemKind::dirs_nc;
  if (name == "sirs_pos1") return SystemKind::sirs_pos1;
  if (name == "sirs_pos2") return SystemKind::sirs_pos2;
  if (name == "sirs_pos_mid") return SystemKind::sirs_pos_mid;
  if (name == "no_irs") return SystemKind::no_irs;
  throw std::invalid_argument("unknown system kind: " + name);
}

ChannelCase classify_case_dnc(const ScenarioConfig& cfg) {
  const FadingPowers p = fading_powers(cfg);
  const bool phi1_active = p.s1.los > 0.0 && p.u1.los > 0.0;
  const bool phi2_active = p.s2.los > 0.0 && p.u2.los > 0.0;
  if (phi1_active && phi2_active) return ChannelCase::case3;
  if (phi1_active) return ChannelCase::case1;
  if (phi2_active) return ChannelCase::case2;
  return ChannelCase::case0;
}

double gamma_dnc(const ScenarioConfig& cfg, const PhaseShifts& ph) {
  return PowerModel(cfg, /*drop_inter_irs=*/true).gamma(ph);
}

PhaseShifts dnc_phases_aligned(const ScenarioConfig& cfg) {
  const LosGeometry g = los_geometry(cfg);
  PhaseShifts ph;
  ph.phi1 = wrap_phase(
      (-g.delta_s1_1u -
       VectorXd::Constant(cfg.irs1.size(), std::arg(g.r_s1_su)))
          .eval());
  ph.phi2 = wrap_phase(
      (-g.delta_s2_2u -
       VectorXd::Constant(cfg.irs2.size(), std::arg(g.r_s2_su)))
          .eval());
  return ph;
}

PhaseShifts dnc_phases_joint(const ScenarioConfig& cfg) {
  const LosGeometry g = los_geometry(cfg);
  PhaseShifts ph;
  ph.phi1 = wrap_phase(
      (-g.delta_s1_1u -
       VectorXd::Constant(cfg.irs1.size(), std::arg(g.r_s1_su)))
          .eval());
  ph.phi2 = wrap_phase(
      (-g.delta_s2_2u - VectorXd::Constant(cfg.irs2.size(),
                                           std::arg(g.r_s2_su) -
                                               std::arg(g.r_s1_s2)))
          .eval());
  return ph;
}

namespace {

// Case 3 without the inter-IRS link reduces exactly to two scalar offsets:
// any optimum aligns each panel's cascade internally (phi_l = -Delta_l +
// psi_l), leaving three cosine terms coupled through psi_2 - psi_1. Those
// cannot all be aligned at once for generic angles, so the two offsets are
// maximized numerically (coarse scan plus exact alternating updates).
std::pair<double, double> dnc_case3_offsets(const ScenarioConfig& cfg) {
  const LosGeometry g = los_geometry(cfg);
  const PowerModel model(cfg, /*drop_inter_irs=*/true);
  const double t1 = cfg.irs1.size(), t2 = cfg.irs2.size();
  const double a = model.c_b11() * t1 * std::abs(g.r_s1_su);
  const double b = model.c_b21() * t2 * std::abs(g.r_s2_su);
  const double c = model.c_cross_b5() * t1 * t2 * std::abs(g.r_s1_s2);
  const double ta = std::arg(g.r_s1_su);
  const double tb = std::arg(g.r_s2_su);
  const double tc = -std::arg(g.r_s1_s2);

  auto value = [&](double p1, double p2) {
    return a * std::cos(ta + p1) + b * std::cos(tb + p2) +
           c * std::cos(p2 - p1 + tc);
  };
  double best1 = -ta, best2 = -tb, best = value(best1, best2);
  const int n = 128;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = value(i * kTwoPi / n, j * kTwoPi / n);
      if (v > best) {
        best = v;
        best1 = i * kTwoPi / n;
        best2 = j * kTwoPi / n;
      }
    }
  for (int it = 0; it < 200; ++it) {
    // each offset has an exact argmax given the other
    double p1 = best1, p2 = best2;
    const cxd z1 = a * std::polar(1.0, ta) + c * std::polar(1.0, -(p2 + tc));
    if (std::abs(z1) > 0) p1 = -std::arg(z1);
    const cxd z2 = b * std::polar(1.0, tb) + c * std::polar(1.0, tc - p1);
    if (std::abs(z2) > 0) p2 = -std::arg(z2);
    const double v = value(p1, p2);
    if (v <= best + 1e-15 * std::max(1.0, std::abs(v))) break;
    best = v;
    best1 = p1;
    best2 = p2;
  }
  return {best1, best2};
}

}  // namespace

PhaseShifts optimal_phases_dnc(const ScenarioConfig& cfg) {
  const ChannelCase c = classify_case_dnc(cfg);
  if (c == ChannelCase::case0) return zero_phases(cfg);

  const PhaseShifts aligned = dnc_phases_aligned(cfg);
  if (c == ChannelCase::case1) {
    PhaseShifts ph = zero_phases(cfg);
    ph.phi1 = aligned.phi1;
    return ph;
  }
  if (c == ChannelCase::case2) {
    PhaseShifts ph = zero_phases(cfg);
    ph.phi2 = aligned.phi2;
    return ph;
  }

  // Case 3: both stated alignment conventions plus the exact two-offset
  // solution; return whichever evaluates highest.
  const LosGeometry g = los_geometry(cfg);
  const auto [p1, p2] = dnc_case3_offsets(cfg);
  PhaseShifts reduced;
  reduced.phi1 = wrap_phase(
      (-g.delta_s1_1u + VectorXd::Constant(cfg.irs1.size(), p1)).eval());
  reduced.phi2 = wrap_phase(
      (-g.delta_s2_2u + VectorXd::Constant(cfg.irs2.size(), p2)).eval());

  const PhaseShifts joint = dnc_phases_joint(cfg);
  const PowerModel model(cfg, /*drop_inter_irs=*/true);
  PhaseShifts best = aligned;
  double g_best = model.gamma(aligned);
  for (const PhaseShifts& cand : {joint, reduced}) {
    const double v = model.gamma(cand);
    if (v > g_best) {
      g_best = v;
      best = cand;
    }
  }
  return best;
}

ScenarioConfig make_sirs_scenario(const ScenarioConfig& base, SystemKind kind) {
  if (!is_sirs(kind))
    throw std::invalid_argument("make_sirs_scenario: not a single-IRS kind");
  if (base.has_sirs_links()) return base;

  ScenarioConfig cfg = base;
  cfg.irs0 = square_array(base.irs1.size() + base.irs2.size());

  if (kind == SystemKind::sirs_pos1) {
    cfg.bs_irs0 = base.bs_irs1;
    cfg.irs0_user = base.irs1_user;
    cfg.pos_irs0 = base.pos_irs1;
    return cfg;
  }
  if (kind == SystemKind::sirs_pos2) {
    cfg.bs_irs0 = base.bs_irs2;
    cfg.irs0_user = base.irs2_user;
    cfg.pos_irs0 = base.pos_irs2;
    return cfg;
  }

  // Midpoint placement: needs node positions to recompute distances and
  // angles; fading exponents and Rician factors reuse the IRS-1 links.
  if (!base.pos_irs1 || !base.pos_irs2 || !base.pos_bs || !base.pos_user)
    throw std::invalid_argument(
        "make_sirs_scenario: midpoint placement needs node positions");
  const Vec3 mid{(base.pos_irs1->x + base.pos_irs2->x) / 2,
                 (base.pos_irs1->y + base.pos_irs2->y) / 2,
                 (base.pos_irs1->z + base.pos_irs2->z) / 2};
  cfg.pos_irs0 = mid;

  LinkParams s0 = base.bs_irs1;
  LinkParams u0 = base.irs1_user;
  const double exp_s0 = s0.path_loss_exponent.value_or(2.3);
  const double exp_u0 = u0.path_loss_exponent.value_or(2.3);
  s0.distance_m = distance(*base.pos_bs, mid);
  u0.distance_m = distance(mid, *base.pos_user);
  s0.fading.alpha = path_loss(*s0.distance_m, exp_s0);
  u0.fading.alpha = path_loss(*u0.distance_m, exp_u0);
  auto [s0_az, s0_el] = direction_angles(*base.pos_bs, mid);
  s0.angles.aod_h = s0_az;
  s0.angles.aod_v = s0_el;
  auto [s0_raz, s0_rel] = direction_angles(mid, *base.pos_bs);
  s0.angles.aoa_h = s0_raz;
  s0.angles.aoa_v = s0_rel;
  auto [u0_az, u0_el] = direction_angles(mid, *base.pos_user);
  u0.angles.aod_h = u0_az;
  u0.angles.aod_v = u0_el;
  cfg.bs_irs0 = s0;
  cfg.irs0_user = u0;
  return cfg;
}

SirsModel::SirsModel(const ScenarioConfig& cfg) {
  if (!cfg.has_sirs_links())
    throw std::invalid_argument("SirsModel: single-IRS links not configured");
  t_s_ = cfg.bs.size();
  t_ = cfg.irs0->size();
  const FadingPowers pw = fading_powers(cfg);
  su_ = pw.su;
  s0_ = pw.s0;
  u0_ = pw.u0;

  const LosComponents los = los_components(cfg);
  const VectorXcd h0u_c = los.h_0u.conjugate();
  a0_ = h0u_c.asDiagonal() * los.h_s0 * los.h_s0.adjoint() *
        los.h_0u.asDiagonal();
  b0_ = h0u_c.cwiseProduct(los.h_s0 * los.h_su);

  gamma0_ = su_.total() * t_s_ +
            (s0_.nlos * u0_.los + s0_.los * u0_.nlos + s0_.nlos * u0_.nlos) *
                t_s_ * t_;
  c_quad_ = s0_.los * u0_.los;
  c_lin_ = std::sqrt(su_.los * s0_.los * u0_.los);
}

double SirsModel::gamma(const VectorXd& phi0) const {
  if (phi0.size() != t_)
    throw std::invalid_argument("SirsModel::gamma: phase vector length mismatch");
  double g = gamma0_;
  if (c_quad_ == 0.0) return g;
  const VectorXcd v0 = unit_phasors(phi0);
  g += c_quad_ * std::real(v0.dot(a0_ * v0));
  if (c_lin_ != 0.0) g += 2.0 * std::real(c_lin_ * v0.dot(b0_));
  return g;
}

double gamma_sgl(const ScenarioConfig& cfg, const VectorXd& phi0) {
  return SirsModel(cfg).gamma(phi0);
}

VectorXd optimal_phases_sgl(const ScenarioConfig& cfg) {
  if (!cfg.has_sirs_links())
    throw std::invalid_argument("optimal_phases_sgl: single-IRS links missing");
  const FadingPowers pw = fading_powers(cfg);
  if (pw.s0.los * pw.u0.los == 0.0)
    return VectorXd::Zero(cfg.irs0->size());  // phase-invariant
  const LosGeometry g = los_geometry(cfg);
  return wrap_phase(
      (-g.delta_s0_0u -
       VectorXd::Constant(cfg.irs0->size(), std::arg(g.r_s0_su)))
          .eval());
}

double asymptotic_gamma_baseline(SystemKind kind, const ScenarioConfig& cfg,
                                 ChannelCase c, Regime regime) {
  if (kind == SystemKind::dirs_c) return asymptotic_gamma_dirc(cfg, c, regime);
  if (kind == SystemKind::no_irs)
    return fading_powers(cfg).su.total() * cfg.bs.size();

  if (is_sirs(kind)) {
    const ScenarioConfig sirs = make_sirs_scenario(cfg, kind);
    const FadingPowers p = fading_powers(sirs);
    const double ts = sirs.bs.size(), t = sirs.irs0->size();
    if (regime == Regime::pure_nlos || p.s0.los * p.u0.los == 0.0)
      return p.s0.nlos * p.u0.nlos * ts * t;
    return p.s0.los * p.u0.los * ts * t * t;
  }

  const FadingPowers p = fading_powers(cfg);
  const double ts = cfg.bs.size(), t1 = cfg.irs1.size(), t2 = cfg.irs2.size();
  if (regime == Regime::pure_nlos) c = ChannelCase::case0;
  if (regime == Regime::pure_los) c = ChannelCase::case3;
  switch (c) {
    case ChannelCase::case0:
      return (p.s1.nlos * p.u1.los + p.s1.los * p.u1.nlos +
              p.s1.nlos * p.u1.nlos) *
                 ts * t1 +
             (p.s2.nlos * p.u2.los + p.s2.los * p.u2.nlos +
              p.s2.nlos * p.u2.nlos) *
                 ts * t2;
    case ChannelCase::case1:
      return p.s1.los * p.u1.los * ts * t1 * t1;
    case ChannelCase::case2:
      return p.s2.los * p.u2.los * ts * t2 * t2;
    default: {
      const double s = std::sqrt(p.s1.los * p.u1.los) * t1 +
                       std::sqrt(p.s2.los * p.u2.los) * t2;
      return ts * s * s;
    }
  }
}

VectorXcd equivalent_channel_baseline(SystemKind kind,
                                      const ChannelRealization& real,
                                      const PhaseShifts& ph) {
  switch (kind) {
    case SystemKind::dirs_c:
      return equivalent_channel(real, ph);
    case SystemKind::dirs_nc: {
      if (ph.phi1.size() != real.h_s1.rows() ||
          ph.phi2.size() != real.h_s2.rows())
        throw std::invalid_argument(
            "equivalent_channel_baseline: phase length mismatch");
      const VectorXcd v1 = unit_phasors(ph.phi1);
      const VectorXcd v2 = unit_phasors(ph.phi2);
      Eigen::RowVectorXcd he =
          real.h_su.adjoint() +
          real.h_1u.adjoint() * v1.conjugate().asDiagonal() * real.h_s1 +
          real.h_2u.adjoint() * v2.conjugate().asDiagonal() * real.h_s2;
      return he.transpose();
    }
    case SystemKind::no_irs:
      return real.h_su.conjugate();
    default: {
      if (real.h_s0.size() == 0)
        throw std::invalid_argument(
            "equivalent_channel_baseline: realization lacks single-IRS links");
      if (ph.phi1.size() != real.h_s0.rows())
        throw std::invalid_argument(
            "equivalent_channel_baseline: phase length mismatch");
      const VectorXcd v0 = unit_phasors(ph.phi1);
      Eigen::RowVectorXcd he =
          real.h_su.adjoint() +
          real.h_0u.adjoint() * v0.conjugate().asDiagonal() * real.h_s0;
      return he.transpose();
    }
  }
}

}  // namespace dirsim
