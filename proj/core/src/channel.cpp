#include "dirsim/channel.hpp"

#include <stdexcept>
#include <vector>

#include "dirsim/steering.hpp"

namespace dirsim {

namespace {

MatrixXcd los_matrix(const LinkAngles& ang, const ArraySpec& rx,
                     const ArraySpec& tx, double dol) {
  const VectorXcd arrive = steering_vector(ang.aoa_h, ang.aoa_v, rx, dol);
  const VectorXcd depart = steering_vector(ang.aod_h, ang.aod_v, tx, dol);
  return arrive * depart.adjoint();
}

MatrixXcd rician_matrix(const LinkFading& fad, const MatrixXcd& los,
                        CounterRng& rng) {
  const double s_los = std::sqrt(fad.los_power());
  const double s_nlos = std::sqrt(fad.nlos_power());
  if (s_nlos == 0.0) return s_los * los;
  MatrixXcd h = draw_nlos(static_cast<int>(los.rows()),
                          static_cast<int>(los.cols()), rng);
  h *= s_nlos;
  if (s_los != 0.0) h += s_los * los;
  return h;
}

VectorXcd rician_vector(const LinkFading& fad, const VectorXcd& los,
                        CounterRng& rng) {
  const double s_los = std::sqrt(fad.los_power());
  const double s_nlos = std::sqrt(fad.nlos_power());
  if (s_nlos == 0.0) return s_los * los;
  VectorXcd h(los.size());
  for (Eigen::Index i = 0; i < h.size(); ++i) h[i] = rng.complex_gaussian();
  h *= s_nlos;
  if (s_los != 0.0) h += s_los * los;
  return h;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(d_over_lambda > 0.0) || d_over_lambda > 0.5)
    throw std::invalid_argument("d_over_lambda must lie in (0, 0.5]");
  if (bs.rows < 1 || bs.cols < 1 || irs1.rows < 1 || irs1.cols < 1 ||
      irs2.rows < 1 || irs2.cols < 1)
    throw std::invalid_argument("array dimensions must be at least 1x1");
  if (!(tx_power_w > 0.0)) throw std::invalid_argument("tx power must be positive");
  if (!(noise_power_w > 0.0))
    throw std::invalid_argument("noise power must be positive");
  std::vector<const LinkFading*> links = {&bs_irs1.fading,   &bs_irs2.fading,
                                          &inter_irs.fading, &bs_user.fading,
                                          &irs1_user.fading, &irs2_user.fading};
  if (has_sirs_links()) {
    if (irs0->rows < 1 || irs0->cols < 1)
      throw std::invalid_argument("single-IRS array dimensions must be at least 1x1");
    links.push_back(&bs_irs0->fading);
    links.push_back(&irs0_user->fading);
  }
  for (const auto* f : links) {
    if (!(f->alpha > 0.0))
      throw std::invalid_argument("link fading power must be positive");
    if (f->regime == Regime::general && !(f->rician_k >= 0.0))
      throw std::invalid_argument("Rician factor must be nonnegative");
  }
}

LosComponents los_components(const ScenarioConfig& cfg) {
  const double dol = cfg.d_over_lambda;
  LosComponents los;
  los.h_s1 = los_matrix(cfg.bs_irs1.angles, cfg.irs1, cfg.bs, dol);
  los.h_s2 = los_matrix(cfg.bs_irs2.angles, cfg.irs2, cfg.bs, dol);
  los.h_12 = los_matrix(cfg.inter_irs.angles, cfg.irs2, cfg.irs1, dol);
  los.h_su = steering_vector(cfg.bs_user.angles.aod_h, cfg.bs_user.angles.aod_v,
                             cfg.bs, dol);
  los.h_1u = steering_vector(cfg.irs1_user.angles.aod_h,
                             cfg.irs1_user.angles.aod_v, cfg.irs1, dol);
  los.h_2u = steering_vector(cfg.irs2_user.angles.aod_h,
                             cfg.irs2_user.angles.aod_v, cfg.irs2, dol);
  if (cfg.has_sirs_links()) {
    los.h_s0 = los_matrix(cfg.bs_irs0->angles, *cfg.irs0, cfg.bs, dol);
    los.h_0u = steering_vector(cfg.irs0_user->angles.aod_h,
                               cfg.irs0_user->angles.aod_v, *cfg.irs0, dol);
  }
  return los;
}

MatrixXcd draw_nlos(int rows, int cols, CounterRng& rng) {
  MatrixXcd h(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) h(r, c) = rng.complex_gaussian();
  return h;
}

ChannelRealization assemble_rician(const ScenarioConfig& cfg, CounterRng& rng) {
  const LosComponents los = los_components(cfg);
  ChannelRealization out;
  out.h_s1 = rician_matrix(cfg.bs_irs1.fading, los.h_s1, rng);
  out.h_s2 = rician_matrix(cfg.bs_irs2.fading, los.h_s2, rng);
  out.h_12 = rician_matrix(cfg.inter_irs.fading, los.h_12, rng);
  out.h_su = rician_vector(cfg.bs_user.fading, los.h_su, rng);
  out.h_1u = rician_vector(cfg.irs1_user.fading, los.h_1u, rng);
  out.h_2u = rician_vector(cfg.irs2_user.fading, los.h_2u, rng);
  if (cfg.has_sirs_links()) {
    out.h_s0 = rician_matrix(cfg.bs_irs0->fading, los.h_s0, rng);
    out.h_0u = rician_vector(cfg.irs0_user->fading, los.h_0u, rng);
  }
  return out;
}

VectorXcd unit_phasors(const VectorXd& phi) {
  VectorXcd v(phi.size());
  for (Eigen::Index i = 0; i < phi.size(); ++i)
    v[i] = cxd(std::cos(phi[i]), -std::sin(phi[i]));
  return v;
}

VectorXcd equivalent_channel(const ChannelRealization& real,
                             const PhaseShifts& ph) {
  if (ph.phi1.size() != real.h_s1.rows() || ph.phi2.size() != real.h_s2.rows())
    throw std::invalid_argument("equivalent_channel: phase vector length mismatch");
  if (real.h_12.rows() != real.h_s2.rows() || real.h_12.cols() != real.h_s1.rows())
    throw std::invalid_argument("equivalent_channel: inter-IRS dimensions mismatch");

  const VectorXcd v1 = unit_phasors(ph.phi1);
  const VectorXcd v2 = unit_phasors(ph.phi2);

  // h_e^H = h_su^H + sum_l h_lu^H diag(v_l^H) H_sl
  //         + h_2u^H diag(v_2^H) H_12 diag(v_1^H) H_s1
  Eigen::RowVectorXcd r2 = real.h_2u.adjoint() * v2.conjugate().asDiagonal();
  Eigen::RowVectorXcd r1 =
      (real.h_1u.adjoint() + r2 * real.h_12) * v1.conjugate().asDiagonal();
  Eigen::RowVectorXcd he =
      real.h_su.adjoint() + r1 * real.h_s1 + r2 * real.h_s2;
  return he.transpose();
}

}  // namespace dirsim
