#include "dirsim/optimizer.hpp"

#include <cmath>

#include "dirsim/rng.hpp"
#include "dirsim/steering.hpp"

namespace dirsim {

namespace {

constexpr double kZeroArg = 1e-12;

VectorXd constant_vector(Eigen::Index n, double value) {
  return VectorXd::Constant(n, value);
}

VectorXd random_phases(Eigen::Index n, CounterRng& rng) {
  VectorXd phi(n);
  for (Eigen::Index i = 0; i < n; ++i) phi[i] = rng.uniform() * kTwoPi;
  return phi;
}

PhaseShifts initial_point(const ScenarioConfig& cfg, const OptimizerConfig& opt) {
  switch (opt.init) {
    case InitMode::given:
      return opt.init_phases;
    case InitMode::random: {
      CounterRng rng(opt.init_seed, 0);
      return {random_phases(cfg.irs1.size(), rng),
              random_phases(cfg.irs2.size(), rng)};
    }
    default:
      return zero_phases(cfg);
  }
}

// One full coordinate sweep over the phases addressed by coeffs, updating
// phi in place. Maintains y = M * exp(-j*phi) incrementally.
void cd_sweep(const CdCoefficients& coeffs, VectorXd& phi) {
  const Eigen::Index n = phi.size();
  VectorXcd v = unit_phasors(phi);
  VectorXcd y = coeffs.matrix * v;
  for (Eigen::Index t = 0; t < n; ++t) {
    const cxd s = y[t] - coeffs.matrix(t, t) * v[t] + coeffs.vector[t];
    if (std::abs(s) < kZeroArg) continue;
    const double updated = wrap_phase(-std::arg(s));
    const cxd v_new = cxd(std::cos(updated), -std::sin(updated));
    y += coeffs.matrix.col(t) * (v_new - v[t]);
    v[t] = v_new;
    phi[t] = updated;
  }
}

}  // namespace

PhaseShifts closed_form_case1(const ScenarioConfig& cfg) {
  if (classify_case(cfg) != ChannelCase::case1)
    throw NotApplicableError("closed_form_case1: scenario is not case 1");
  const LosGeometry g = los_geometry(cfg);
  const FadingPowers p = fading_powers(cfg);
  PhaseShifts ph = zero_phases(cfg);
  if (p.u1.los == 0.0) {
    ph.phi1 = wrap_phase(
        (-g.delta_s1_12 -
         constant_vector(cfg.irs1.size(), std::arg(g.r_s1_s2 * g.r_s2_12)))
            .eval());
  } else if (p.x12.los == 0.0) {
    ph.phi1 = wrap_phase(
        (-g.delta_s1_1u -
         constant_vector(cfg.irs1.size(), std::arg(g.r_s1_su)))
            .eval());
  } else {
    throw NotApplicableError(
        "closed_form_case1: both LoS routes through panel 1 are active");
  }
  return ph;
}

PhaseShifts closed_form_case2(const ScenarioConfig& cfg) {
  if (classify_case(cfg) != ChannelCase::case2)
    throw NotApplicableError("closed_form_case2: scenario is not case 2");
  const LosGeometry g = los_geometry(cfg);
  const FadingPowers p = fading_powers(cfg);
  PhaseShifts ph = zero_phases(cfg);
  if (p.s2.los == 0.0) {
    ph.phi2 = wrap_phase(
        (-g.delta_12_2u -
         constant_vector(cfg.irs2.size(), std::arg(g.r_12_1u)))
            .eval());
  } else if (p.x12.los == 0.0) {
    ph.phi2 = wrap_phase(
        (-g.delta_s2_2u -
         constant_vector(cfg.irs2.size(), std::arg(g.r_s2_su)))
            .eval());
  } else {
    throw NotApplicableError(
        "closed_form_case2: both LoS routes through panel 2 are active");
  }
  return ph;
}

PhaseShifts closed_form_case3(const ScenarioConfig& cfg, double psi) {
  if (classify_case(cfg) != ChannelCase::case3)
    throw NotApplicableError("closed_form_case3: scenario is not case 3");
  const LosGeometry g = los_geometry(cfg);
  const FadingPowers p = fading_powers(cfg);
  PhaseShifts ph = zero_phases(cfg);
  if (p.s2.los == 0.0 && p.u1.los == 0.0) {
    const double half = 0.5 * std::arg(g.r_s1_su);
    ph.phi1 = wrap_phase(
        (-g.delta_s1_12 + constant_vector(cfg.irs1.size(), psi - half)).eval());
    ph.phi2 = wrap_phase(
        (-g.delta_12_2u + constant_vector(cfg.irs2.size(), -psi - half)).eval());
  } else if (p.x12.los == 0.0 && p.su.los == 0.0) {
    ph.phi1 =
        wrap_phase((-g.delta_s1_1u + constant_vector(cfg.irs1.size(), psi)).eval());
    ph.phi2 = wrap_phase(
        (-g.delta_s2_2u +
         constant_vector(cfg.irs2.size(), psi + std::arg(g.r_s1_s2)))
            .eval());
  } else {
    throw NotApplicableError(
        "closed_form_case3: no degenerate fading pattern applies");
  }
  return ph;
}

CdCoefficients build_cd_coefficients(const PowerModel& model,
                                     const PhaseShifts& ph, CdMode mode) {
  const CouplingMatrices& cm = model.couplings();
  CdCoefficients out;
  out.mode = mode;
  switch (mode) {
    case CdMode::case1: {
      out.matrix = model.c_a11() * cm.A11 + model.c_a12() * cm.A12;
      out.vector = model.c_b11() * cm.b11 + model.c_b12() * cm.b12;
      break;
    }
    case CdMode::case2: {
      out.matrix = model.c_a21() * cm.A21 + model.c_a22() * cm.A22;
      out.vector = model.c_b21() * cm.b21 + model.c_b22() * cm.b22;
      break;
    }
    case CdMode::case3_irs1: {
      const VectorXcd v2 = unit_phasors(ph.phi2);
      out.matrix = model.c_a11() * cm.A11 + model.c_a12() * cm.A12;
      if (model.c_quartic() != 0.0) {
        const VectorXcd u = cm.A3.transpose() * v2.conjugate();
        out.matrix += model.c_quartic() * (u * u.adjoint());
      }
      const VectorXcd w = (v2.adjoint() * cm.B1).transpose();  // (v2^H B1)^T
      if (model.c_cross_b2() != 0.0) {
        const MatrixXcd q = w.asDiagonal() * cm.B2;
        out.matrix += model.c_cross_b2() * (q + q.adjoint());
      }
      out.vector = model.c_b11() * cm.b11 + model.c_b12() * cm.b12;
      if (model.c_cross_b3() != 0.0)
        out.vector += model.c_cross_b3() * w.cwiseProduct(cm.B3 * v2);
      if (model.c_cross_b4() != 0.0)
        out.vector += model.c_cross_b4() * (cm.B4.transpose() * v2.conjugate());
      if (model.c_cross_b5() != 0.0)
        out.vector += model.c_cross_b5() * (cm.B5.adjoint() * v2);
      break;
    }
    case CdMode::case3_irs2:
    case CdMode::pure_los_irs2: {
      const VectorXcd v1 = unit_phasors(ph.phi1);
      const VectorXcd v1c = v1.conjugate();
      out.matrix = model.c_a21() * cm.A21 + model.c_a22() * cm.A22;
      if (model.c_quartic() != 0.0) {
        const VectorXcd u = cm.A3 * v1c;
        out.matrix += model.c_quartic() * (u * u.adjoint());
      }
      if (model.c_cross_b3() != 0.0) {
        const MatrixXcd q = cm.B1 * v1c.asDiagonal() * cm.B3;
        out.matrix += model.c_cross_b3() * (q + q.adjoint());
      }
      out.vector = model.c_b21() * cm.b21 + model.c_b22() * cm.b22;
      if (model.c_cross_b2() != 0.0)
        out.vector +=
            model.c_cross_b2() * (cm.B1 * v1c.cwiseProduct(cm.B2 * v1));
      if (model.c_cross_b4() != 0.0)
        out.vector += model.c_cross_b4() * (cm.B4 * v1c);
      if (model.c_cross_b5() != 0.0)
        out.vector += model.c_cross_b5() * (cm.B5 * v1);
      break;
    }
  }
  return out;
}

double cd_update(const CdCoefficients& coeffs, const VectorXd& phases, int t) {
  const VectorXcd v = unit_phasors(phases);
  cxd s = coeffs.vector[t];
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    if (k != t) s += coeffs.matrix(t, k) * v[k];
  if (std::abs(s) < kZeroArg) return phases[t];
  return wrap_phase(-std::arg(s));
}

VectorXd bcd_block_phi1(const ScenarioConfig& cfg, const VectorXd& phi2) {
  const double dol = cfg.d_over_lambda;
  const FadingPowers p = fading_powers(cfg);
  const LosComponents los = los_components(cfg);
  const VectorXcd a_arr_s1 = steering_vector(
      cfg.bs_irs1.angles.aoa_h, cfg.bs_irs1.angles.aoa_v, cfg.irs1, dol);
  const VectorXcd a_dep_s1 = steering_vector(
      cfg.bs_irs1.angles.aod_h, cfg.bs_irs1.angles.aod_v, cfg.bs, dol);
  const VectorXcd v2 = unit_phasors(phi2);

  // Weight on the first panel's combined outgoing LoS routes (direct to the
  // user plus through the second panel). Written as the conjugated row so
  // that diag(u_row) a_{A,S1} is an elementwise product.
  const MatrixXcd b1 = los.h_2u.conjugate().asDiagonal() * los.h_12;
  const VectorXcd u_row = std::sqrt(p.s1.los * p.u1.los) * los.h_1u.conjugate() +
                          std::sqrt(p.s1.los * p.x12.los * p.u2.los) *
                              (v2.adjoint() * b1).transpose();
  const VectorXcd g = std::sqrt(p.su.los) * los.h_su +
                      std::sqrt(p.s2.los * p.u2.los) *
                          (los.h_s2.adjoint() * (v2.asDiagonal() * los.h_2u));
  const cxd offset = a_dep_s1.dot(g);

  VectorXd phi1(cfg.irs1.size());
  const double shift = std::abs(offset) < kZeroArg ? 0.0 : std::arg(offset);
  for (Eigen::Index t = 0; t < phi1.size(); ++t) {
    const cxd y = u_row[t] * a_arr_s1[t];
    phi1[t] = wrap_phase(-std::arg(y) - shift);
  }
  return phi1;
}

namespace {

OptimizerTrace run_coordinate_descent(const ScenarioConfig& cfg,
                                      const OptimizerConfig& opt,
                                      const PowerModel& model,
                                      ChannelCase channel_case, Regime regime) {
  OptimizerTrace trace;
  trace.channel_case = channel_case;
  trace.regime = regime;
  trace.phases = initial_point(cfg, opt);

  const bool pure_los = regime == Regime::pure_los;
  const bool joint = channel_case == ChannelCase::case3;
  trace.method = pure_los ? OptimizeMethod::block_coordinate_descent
                          : OptimizeMethod::coordinate_descent;

  double obj = model.gamma(trace.phases);
  trace.objective.push_back(obj);

  // Coefficients for the single-panel cases do not depend on phases.
  CdCoefficients fixed;
  if (!joint)
    fixed = build_cd_coefficients(
        model, trace.phases,
        channel_case == ChannelCase::case1 ? CdMode::case1 : CdMode::case2);

  for (int pass = 1; pass <= opt.max_iterations; ++pass) {
    if (pure_los) {
      trace.phases.phi1 = bcd_block_phi1(cfg, trace.phases.phi2);
      CdCoefficients c2 =
          build_cd_coefficients(model, trace.phases, CdMode::pure_los_irs2);
      cd_sweep(c2, trace.phases.phi2);
    } else if (joint) {
      CdCoefficients c1 =
          build_cd_coefficients(model, trace.phases, CdMode::case3_irs1);
      cd_sweep(c1, trace.phases.phi1);
      CdCoefficients c2 =
          build_cd_coefficients(model, trace.phases, CdMode::case3_irs2);
      cd_sweep(c2, trace.phases.phi2);
    } else if (channel_case == ChannelCase::case1) {
      cd_sweep(fixed, trace.phases.phi1);
    } else {
      cd_sweep(fixed, trace.phases.phi2);
    }

    const double next = model.gamma(trace.phases);
    trace.objective.push_back(next);
    trace.iterations_used = pass;
    const double rel =
        (next - obj) / std::max(std::abs(next), 1e-300);
    obj = next;
    if (rel < opt.rel_tolerance) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

}  // namespace

PowerReport make_power_report(const ScenarioConfig& cfg, OptimizerTrace trace) {
  PowerReport report;
  report.channel_case = trace.channel_case;
  report.regime = trace.regime;
  report.gamma = trace.objective.empty() ? 0.0 : trace.final_gamma();
  report.rate_bound_bits = rate_bound(cfg, report.gamma);
  report.trace = std::move(trace);
  return report;
}

OptimizerTrace run_iterative_optimizer(const ScenarioConfig& cfg,
                                       const OptimizerConfig& opt) {
  const Regime regime = cfg.regime();
  const ChannelCase channel_case = classify_case(cfg);
  const PowerModel model(cfg);
  if (channel_case == ChannelCase::case0) {
    OptimizerTrace trace;
    trace.channel_case = channel_case;
    trace.regime = regime;
    trace.phases = zero_phases(cfg);
    trace.objective.push_back(model.gamma0());
    trace.converged = true;
    return trace;
  }
  return run_coordinate_descent(cfg, opt, model, channel_case, regime);
}

OptimizerTrace run_optimizer(const ScenarioConfig& cfg,
                             const OptimizerConfig& opt) {
  const Regime regime = cfg.regime();
  const ChannelCase channel_case = classify_case(cfg);
  const PowerModel model(cfg);

  OptimizerTrace trace;
  trace.channel_case = channel_case;
  trace.regime = regime;

  if (channel_case == ChannelCase::case0) {
    // Phase-invariant: any feasible phases are optimal.
    trace.phases = zero_phases(cfg);
    trace.objective.push_back(model.gamma0());
    trace.converged = true;
    trace.method = OptimizeMethod::none;
    return trace;
  }

  if (regime == Regime::pure_los)
    return run_coordinate_descent(cfg, opt, model, channel_case, regime);

  const FadingPowers p = fading_powers(cfg);
  auto finish_closed_form = [&](PhaseShifts ph, OptimizeMethod method) {
    trace.phases = std::move(ph);
    trace.objective.push_back(model.gamma(trace.phases));
    trace.converged = true;
    trace.method = method;
    return trace;
  };

  switch (channel_case) {
    case ChannelCase::case1:
      if (p.u1.los == 0.0 || p.x12.los == 0.0)
        return finish_closed_form(closed_form_case1(cfg),
                                  OptimizeMethod::closed_form_case1);
      break;
    case ChannelCase::case2:
      if (p.s2.los == 0.0 || p.x12.los == 0.0)
        return finish_closed_form(closed_form_case2(cfg),
                                  OptimizeMethod::closed_form_case2);
      break;
    default:
      if ((p.s2.los == 0.0 && p.u1.los == 0.0) ||
          (p.x12.los == 0.0 && p.su.los == 0.0))
        return finish_closed_form(closed_form_case3(cfg, opt.psi),
                                  OptimizeMethod::closed_form_case3);
      break;
  }
  return run_coordinate_descent(cfg, opt, model, channel_case, regime);
}

}  // namespace dirsim
