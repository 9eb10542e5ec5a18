#include "dirsim/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "dirsim/rng.hpp"
#include "dirsim/steering.hpp"

namespace dirsim {

namespace {

struct ScaledLink {
  MatrixXcd los;       // sqrt(los power) * LoS component
  double nlos = 0.0;   // sqrt(nlos power)
  int rows = 0, cols = 0;
};

ScaledLink scaled_matrix(const LinkFading& fad, const MatrixXcd& los) {
  ScaledLink s;
  s.los = std::sqrt(fad.los_power()) * los;
  s.nlos = std::sqrt(fad.nlos_power());
  s.rows = static_cast<int>(los.rows());
  s.cols = static_cast<int>(los.cols());
  return s;
}

void draw_into(MatrixXcd& out, const ScaledLink& link, CounterRng& rng) {
  if (link.nlos == 0.0) {
    out = link.los;
    return;
  }
  out.resize(link.rows, link.cols);
  for (int c = 0; c < link.cols; ++c)
    for (int r = 0; r < link.rows; ++r)
      out(r, c) = link.los(r, c) + link.nlos * rng.complex_gaussian();
}

// Per-kind sampling state: scaled LoS components of exactly the channels the
// system uses (drawn in a fixed order) and the sweep phasors.
class Sampler {
 public:
  Sampler(const ScenarioConfig& base, const PhaseShifts& ph, SystemKind kind)
      : kind_(kind) {
    const ScenarioConfig cfg =
        is_sirs(kind) ? make_sirs_scenario(base, kind) : base;
    const LosComponents los = los_components(cfg);
    su_ = scaled_matrix(cfg.bs_user.fading, los.h_su);
    if (kind_ == SystemKind::dirs_c || kind_ == SystemKind::dirs_nc) {
      s1_ = scaled_matrix(cfg.bs_irs1.fading, los.h_s1);
      s2_ = scaled_matrix(cfg.bs_irs2.fading, los.h_s2);
      u1_ = scaled_matrix(cfg.irs1_user.fading, los.h_1u);
      u2_ = scaled_matrix(cfg.irs2_user.fading, los.h_2u);
      v1_ = unit_phasors(ph.phi1).conjugate();  // diag entries of diag(v1^H)
      v2_ = unit_phasors(ph.phi2).conjugate();
      if (kind_ == SystemKind::dirs_c)
        x12_ = scaled_matrix(cfg.inter_irs.fading, los.h_12);
    } else if (is_sirs(kind_)) {
      s0_ = scaled_matrix(cfg.bs_irs0->fading, los.h_s0);
      u0_ = scaled_matrix(cfg.irs0_user->fading, los.h_0u);
      v0_ = unit_phasors(ph.phi1).conjugate();
      if (v0_.size() != s0_.rows)
        throw std::invalid_argument("Sampler: phi1 must hold the single panel phases");
    }
  }

  /// One draw of ||h_e||^2.
  double sample(CounterRng& rng, MatrixXcd& m1, MatrixXcd& m2, MatrixXcd& m3,
                MatrixXcd& vsu, MatrixXcd& vu1, MatrixXcd& vu2) const {
    draw_into(vsu, su_, rng);
    switch (kind_) {
      case SystemKind::no_irs:
        return vsu.squaredNorm();
      case SystemKind::dirs_c: {
        draw_into(m1, s1_, rng);
        draw_into(m2, s2_, rng);
        draw_into(m3, x12_, rng);
        draw_into(vu1, u1_, rng);
        draw_into(vu2, u2_, rng);
        Eigen::RowVectorXcd r2 =
            vu2.col(0).adjoint() * v2_.asDiagonal();
        Eigen::RowVectorXcd he =
            vsu.col(0).adjoint() +
            (vu1.col(0).adjoint() + r2 * m3) * v1_.asDiagonal() * m1 +
            r2 * m2;
        return he.squaredNorm();
      }
      case SystemKind::dirs_nc: {
        draw_into(m1, s1_, rng);
        draw_into(m2, s2_, rng);
        draw_into(vu1, u1_, rng);
        draw_into(vu2, u2_, rng);
        Eigen::RowVectorXcd he =
            vsu.col(0).adjoint() +
            vu1.col(0).adjoint() * v1_.asDiagonal() * m1 +
            vu2.col(0).adjoint() * v2_.asDiagonal() * m2;
        return he.squaredNorm();
      }
      default: {
        draw_into(m1, s0_, rng);
        draw_into(vu1, u0_, rng);
        Eigen::RowVectorXcd he =
            vsu.col(0).adjoint() +
            vu1.col(0).adjoint() * v0_.asDiagonal() * m1;
        return he.squaredNorm();
      }
    }
  }

 private:
  SystemKind kind_;
  ScaledLink su_, s1_, s2_, x12_, u1_, u2_, s0_, u0_;
  VectorXcd v1_, v2_, v0_;
};

template <typename Transform>
McEstimate run_mc(const ScenarioConfig& cfg, const PhaseShifts& ph,
                  SystemKind kind, const McConfig& mc, Transform&& metric) {
  if (mc.num_samples < 1)
    throw std::invalid_argument("monte carlo: num_samples must be >= 1");
  const int batch = std::max(1, mc.batch_size);
  const long long n_batches = (mc.num_samples + batch - 1) / batch;
  const Sampler sampler(cfg, ph, kind);

  // per-batch Welford accumulators, merged afterwards in batch order
  struct Moments {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::vector<Moments> parts(n_batches);
  std::atomic<long long> next{0};

  auto work = [&]() {
    MatrixXcd m1, m2, m3, vsu, vu1, vu2;
    while (true) {
      const long long b = next.fetch_add(1);
      if (b >= n_batches) break;
      const long long lo = b * batch;
      const long long hi = std::min<long long>(lo + batch, mc.num_samples);
      CounterRng rng(mc.seed, static_cast<std::uint64_t>(b));
      Moments acc;
      for (long long i = lo; i < hi; ++i) {
        const double x = metric(sampler.sample(rng, m1, m2, m3, vsu, vu1, vu2));
        ++acc.n;
        const double delta = x - acc.mean;
        acc.mean += delta / static_cast<double>(acc.n);
        acc.m2 += delta * (x - acc.mean);
      }
      parts[b] = acc;
    }
  };

  int threads = mc.num_threads > 0
                    ? mc.num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = static_cast<int>(
      std::max<long long>(1, std::min<long long>(threads, n_batches)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // deterministic reduction in batch order
  Moments total;
  for (long long b = 0; b < n_batches; ++b) {
    const Moments& p = parts[b];
    if (p.n == 0) continue;
    const double delta = p.mean - total.mean;
    const long long n = total.n + p.n;
    total.m2 += p.m2 + delta * delta *
                           (static_cast<double>(total.n) * p.n / n);
    total.mean += delta * static_cast<double>(p.n) / n;
    total.n = n;
  }
  McEstimate est;
  est.num_samples = total.n;
  est.mean = total.mean;
  if (total.n > 1)
    est.std_error =
        std::sqrt(std::max(0.0, total.m2 / (total.n - 1.0)) / total.n);
  return est;
}

}  // namespace

McEstimate estimate_gamma_mc(const ScenarioConfig& cfg, const PhaseShifts& ph,
                             SystemKind kind, const McConfig& mc) {
  return run_mc(cfg, ph, kind, mc, [](double p) { return p; });
}

McEstimate estimate_rate_mc(const ScenarioConfig& cfg, const PhaseShifts& ph,
                            SystemKind kind, const McConfig& mc) {
  const double snr = cfg.snr_scale();
  return run_mc(cfg, ph, kind, mc,
                [snr](double p) { return std::log2(1.0 + snr * p); });
}

double analytic_gamma(const ScenarioConfig& cfg, const PhaseShifts& ph,
                      SystemKind kind) {
  switch (kind) {
    case SystemKind::dirs_c:
      return PowerModel(cfg).gamma(ph);
    case SystemKind::dirs_nc:
      return PowerModel(cfg, /*drop_inter_irs=*/true).gamma(ph);
    case SystemKind::no_irs:
      return fading_powers(cfg).su.total() * cfg.bs.size();
    default:
      return SirsModel(make_sirs_scenario(cfg, kind)).gamma(ph.phi1);
  }
}

RandomPhaseReport random_phase_baseline(const ScenarioConfig& cfg,
                                        SystemKind kind, int num_draws,
                                        std::uint64_t seed) {
  if (num_draws < 1)
    throw std::invalid_argument("random_phase_baseline: num_draws must be >= 1");
  const int n1 = is_sirs(kind) ? make_sirs_scenario(cfg, kind).irs0->size()
                               : cfg.irs1.size();
  const int n2 = is_sirs(kind) || kind == SystemKind::no_irs
                     ? 0
                     : cfg.irs2.size();
  RandomPhaseReport report;
  report.num_draws = num_draws;
  double sum = 0.0;
  for (int d = 0; d < num_draws; ++d) {
    CounterRng rng(seed, static_cast<std::uint64_t>(d));
    PhaseShifts ph;
    ph.phi1.resize(n1);
    ph.phi2.resize(n2);
    for (int i = 0; i < n1; ++i) ph.phi1[i] = rng.uniform() * kTwoPi;
    for (int i = 0; i < n2; ++i) ph.phi2[i] = rng.uniform() * kTwoPi;
    const double g = analytic_gamma(cfg, ph, kind);
    sum += g;
    if (d == 0 || g > report.best_gamma) {
      report.best_gamma = g;
      report.best_phases = ph;
    }
  }
  report.mean_gamma = sum / num_draws;
  return report;
}

VerifyResult verify_analytic(const ScenarioConfig& cfg, const PhaseShifts& ph,
                             SystemKind kind, const McConfig& mc) {
  VerifyResult out;
  out.label = to_string(kind);
  out.analytic = analytic_gamma(cfg, ph, kind);
  const McEstimate est = estimate_gamma_mc(cfg, ph, kind, mc);
  out.mc_mean = est.mean;
  out.mc_std_error = est.std_error;
  const double diff = std::abs(out.analytic - est.mean);
  if (est.std_error > 0.0) {
    out.z = diff / est.std_error;
    out.pass = out.z <= 3.0;
  } else {
    // deterministic channel: exact comparison
    out.z = 0.0;
    out.pass = diff <= 1e-10 * std::max(1.0, std::abs(out.analytic));
  }
  return out;
}

}  // namespace dirsim
