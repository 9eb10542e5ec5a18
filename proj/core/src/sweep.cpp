#include "dirsim/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "dirsim/steering.hpp"

namespace dirsim {

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::p_s:
      return "P_S";
    case SweepVariable::t_s:
      return "T_S";
    case SweepVariable::t1_split:
      return "T1_split";
    case SweepVariable::t_total:
      return "T_total";
    case SweepVariable::k:
      return "K";
    case SweepVariable::irs_x:
      return "irs_x";
    default:
      return "irs_y";
  }
}

const char* to_string(Design d) {
  switch (d) {
    case Design::optimized:
      return "optimized";
    case Design::random:
      return "random";
    case Design::pure_los_design:
      return "pure_los_design";
    default:
      return "pure_nlos_design";
  }
}

const char* to_string(Metric m) {
  switch (m) {
    case Metric::gamma_analytic:
      return "gamma_analytic";
    case Metric::rate_bound:
      return "rate_bound";
    case Metric::rate_mc:
      return "rate_mc";
    default:
      return "gamma_mc";
  }
}

SweepVariable sweep_variable_from_string(const std::string& s) {
  if (s == "P_S") return SweepVariable::p_s;
  if (s == "T_S") return SweepVariable::t_s;
  if (s == "T1_split") return SweepVariable::t1_split;
  if (s == "T_total") return SweepVariable::t_total;
  if (s == "K") return SweepVariable::k;
  if (s == "irs_x") return SweepVariable::irs_x;
  if (s == "irs_y") return SweepVariable::irs_y;
  throw std::invalid_argument("unknown sweep variable: " + s);
}

Design design_from_string(const std::string& s) {
  if (s == "optimized") return Design::optimized;
  if (s == "random") return Design::random;
  if (s == "pure_los_design") return Design::pure_los_design;
  if (s == "pure_nlos_design") return Design::pure_nlos_design;
  throw std::invalid_argument("unknown design: " + s);
}

Metric metric_from_string(const std::string& s) {
  if (s == "gamma_analytic") return Metric::gamma_analytic;
  if (s == "rate_bound") return Metric::rate_bound;
  if (s == "rate_mc") return Metric::rate_mc;
  if (s == "gamma_mc") return Metric::gamma_mc;
  throw std::invalid_argument("unknown metric: " + s);
}

namespace {

void refresh_derived_alpha(LinkParams& link, const Vec3& a, const Vec3& b) {
  const double d = distance(a, b);
  link.distance_m = d;
  link.fading.alpha = path_loss(d, link.path_loss_exponent.value_or(2.3));
}

void set_all_k(ScenarioConfig& cfg, double k_linear) {
  LinkParams* links[] = {&cfg.bs_irs1,   &cfg.bs_irs2,   &cfg.inter_irs,
                         &cfg.bs_user,   &cfg.irs1_user, &cfg.irs2_user};
  for (auto* l : links) {
    l->fading.regime = Regime::general;
    l->fading.rician_k = k_linear;
  }
  if (cfg.bs_irs0) {
    cfg.bs_irs0->fading.regime = Regime::general;
    cfg.bs_irs0->fading.rician_k = k_linear;
  }
  if (cfg.irs0_user) {
    cfg.irs0_user->fading.regime = Regime::general;
    cfg.irs0_user->fading.rician_k = k_linear;
  }
}

}  // namespace

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepVariable v,
                                 double value) {
  ScenarioConfig cfg = base;
  switch (v) {
    case SweepVariable::p_s:
      cfg.tx_power_w = dbm_to_watts(value);
      break;
    case SweepVariable::t_s:
      cfg.bs = square_array(static_cast<int>(std::lround(value)));
      break;
    case SweepVariable::t1_split: {
      const int total = base.irs1.size() + base.irs2.size();
      const int t1 = static_cast<int>(std::lround(value));
      if (t1 < 1 || t1 >= total)
        throw std::invalid_argument("T1_split value outside (0, T_total)");
      cfg.irs1 = square_array(t1);
      cfg.irs2 = square_array(total - t1);
      break;
    }
    case SweepVariable::t_total: {
      const int total = static_cast<int>(std::lround(value));
      if (total < 2) throw std::invalid_argument("T_total must be at least 2");
      cfg.irs1 = square_array(total / 2);
      cfg.irs2 = square_array(total - total / 2);
      break;
    }
    case SweepVariable::k:
      set_all_k(cfg, db_to_linear(value));
      break;
    case SweepVariable::irs_x:
    case SweepVariable::irs_y: {
      if (!cfg.pos_irs1 || !cfg.pos_irs2 || !cfg.pos_bs || !cfg.pos_user)
        throw std::invalid_argument("position sweep needs node positions");
      if (v == SweepVariable::irs_x) {
        cfg.pos_irs1->x = -value;
        cfg.pos_irs2->x = -value;
      } else {
        cfg.pos_irs1->y = -value;
        cfg.pos_irs2->y = value;
      }
      refresh_derived_alpha(cfg.bs_irs1, *cfg.pos_bs, *cfg.pos_irs1);
      refresh_derived_alpha(cfg.bs_irs2, *cfg.pos_bs, *cfg.pos_irs2);
      refresh_derived_alpha(cfg.inter_irs, *cfg.pos_irs1, *cfg.pos_irs2);
      refresh_derived_alpha(cfg.irs1_user, *cfg.pos_irs1, *cfg.pos_user);
      refresh_derived_alpha(cfg.irs2_user, *cfg.pos_irs2, *cfg.pos_user);
      break;
    }
  }
  return cfg;
}

namespace {

ScenarioConfig with_regime(const ScenarioConfig& base, Regime regime) {
  ScenarioConfig cfg = base;
  LinkParams* links[] = {&cfg.bs_irs1,   &cfg.bs_irs2,   &cfg.inter_irs,
                         &cfg.bs_user,   &cfg.irs1_user, &cfg.irs2_user};
  for (auto* l : links) l->fading.regime = regime;
  if (cfg.bs_irs0) cfg.bs_irs0->fading.regime = regime;
  if (cfg.irs0_user) cfg.irs0_user->fading.regime = regime;
  return cfg;
}

struct CellKey {
  double value;
  SystemKind system;
  Design design;
};

/// Phases chosen by the given design for one (scenario, system).
PhaseShifts design_phases(const ScenarioConfig& cfg, SystemKind system,
                          Design design, std::uint64_t seed, int random_draws,
                          std::optional<int>& iterations) {
  if (system == SystemKind::no_irs) return PhaseShifts{};
  switch (design) {
    case Design::optimized: {
      if (system == SystemKind::dirs_c) {
        OptimizerConfig opt;
        const OptimizerTrace trace = run_optimizer(cfg, opt);
        if (trace.method == OptimizeMethod::coordinate_descent ||
            trace.method == OptimizeMethod::block_coordinate_descent)
          iterations = trace.iterations_used;
        return trace.phases;
      }
      if (system == SystemKind::dirs_nc) return optimal_phases_dnc(cfg);
      PhaseShifts ph;
      ph.phi1 = optimal_phases_sgl(make_sirs_scenario(cfg, system));
      return ph;
    }
    case Design::pure_los_design: {
      // design on the LoS-only model, evaluate on the true scenario
      const ScenarioConfig los_cfg = with_regime(cfg, Regime::pure_los);
      std::optional<int> ignored;
      return design_phases(los_cfg, system, Design::optimized, seed,
                           random_draws, ignored);
    }
    case Design::pure_nlos_design: {
      // the NLoS-only model is phase-invariant, any feasible choice works
      if (is_sirs(system)) {
        PhaseShifts ph;
        ph.phi1 = VectorXd::Zero(make_sirs_scenario(cfg, system).irs0->size());
        return ph;
      }
      return zero_phases(cfg);
    }
    default:
      return PhaseShifts{};  // random design re-draws per evaluation
  }
}

}  // namespace

std::vector<ResultRow> run_sweep(const ScenarioConfig& base,
                                 const SweepSpec& spec, std::uint64_t seed,
                                 int num_threads) {
  if (spec.values.empty())
    throw std::invalid_argument("sweep: values must be nonempty");

  struct Cell {
    double value;
    SystemKind system;
    Design design;
  };
  std::vector<Cell> cells;
  for (double v : spec.values)
    for (SystemKind s : spec.systems)
      for (Design d : spec.designs) cells.push_back({v, s, d});

  // one row per metric within each cell, kept in metric order
  std::vector<std::vector<ResultRow>> results(cells.size());

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) break;
      const Cell& cell = cells[idx];
      const ScenarioConfig cfg =
          apply_sweep_value(base, spec.variable, cell.value);

      McConfig mc;
      mc.num_samples = spec.mc_samples;
      mc.seed = seed;
      mc.num_threads = 1;  // parallelism lives at the cell level

      std::vector<ResultRow> rows;
      auto emit = [&](Metric m, double value, std::optional<double> se,
                      std::optional<int> iters) {
        rows.push_back({cell.value, cell.system, cell.design, m, value, se,
                        iters});
      };

      if (cell.design == Design::random) {
        // average each metric over the same seeded phase draws
        const int draws = std::max(1, spec.random_draws);
        for (Metric m : spec.metrics) {
          double acc = 0.0;
          for (int d = 0; d < draws; ++d) {
            const RandomPhaseReport rp =
                random_phase_baseline(cfg, cell.system, 1, seed + d);
            const PhaseShifts& ph = rp.best_phases;
            switch (m) {
              case Metric::gamma_analytic:
                acc += rp.best_gamma;
                break;
              case Metric::rate_bound:
                acc += rate_bound(cfg, rp.best_gamma);
                break;
              case Metric::rate_mc:
                acc += estimate_rate_mc(cfg, ph, cell.system, mc).mean;
                break;
              case Metric::gamma_mc:
                acc += estimate_gamma_mc(cfg, ph, cell.system, mc).mean;
                break;
            }
          }
          emit(m, acc / draws, std::nullopt, std::nullopt);
        }
      } else {
        std::optional<int> iterations;
        const PhaseShifts ph = design_phases(cfg, cell.system, cell.design,
                                             seed, spec.random_draws,
                                             iterations);
        for (Metric m : spec.metrics) {
          switch (m) {
            case Metric::gamma_analytic:
              emit(m, analytic_gamma(cfg, ph, cell.system), std::nullopt,
                   iterations);
              break;
            case Metric::rate_bound:
              emit(m,
                   rate_bound(cfg, analytic_gamma(cfg, ph, cell.system)),
                   std::nullopt, iterations);
              break;
            case Metric::rate_mc: {
              const McEstimate est =
                  estimate_rate_mc(cfg, ph, cell.system, mc);
              emit(m, est.mean, est.std_error, iterations);
              break;
            }
            case Metric::gamma_mc: {
              const McEstimate est =
                  estimate_gamma_mc(cfg, ph, cell.system, mc);
              emit(m, est.mean, est.std_error, iterations);
              break;
            }
          }
        }
      }
      results[idx] = std::move(rows);
    }
  };

  int threads = num_threads > 0
                    ? num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = static_cast<int>(std::max<std::size_t>(
      1, std::min<std::size_t>(threads, cells.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::vector<ResultRow> out;
  for (auto& rows : results)
    for (auto& r : rows) out.push_back(r);
  return out;
}

std::string format_number(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string sweep_to_csv(const SweepSpec& spec,
                         const std::vector<ResultRow>& rows) {
  std::string csv =
      "variable,sweep_value,system,design,metric,value,std_error,iterations\n";
  for (const auto& r : rows) {
    csv += to_string(spec.variable);
    csv += ',';
    csv += format_number(r.sweep_value);
    csv += ',';
    csv += to_string(r.system);
    csv += ',';
    csv += to_string(r.design);
    csv += ',';
    csv += to_string(r.metric);
    csv += ',';
    csv += format_number(r.value);
    csv += ',';
    if (r.std_error) csv += format_number(*r.std_error);
    csv += ',';
    if (r.iterations) csv += std::to_string(*r.iterations);
    csv += '\n';
  }
  return csv;
}

}  // namespace dirsim
