#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace dirsim {

using cxd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Uniform rectangular array of rows x cols elements.
struct ArraySpec {
  int rows = 1;
  int cols = 1;
  int size() const { return rows * cols; }
};

/// Azimuth/elevation pairs (radians) for the arrival and departure sides of
/// one link. Arrival angles are unused for links ending at the single-antenna
/// user.
struct LinkAngles {
  double aoa_h = 0, aoa_v = 0;
  double aod_h = 0, aod_v = 0;
};

enum class Regime { general, pure_los, pure_nlos };

const char* to_string(Regime r);

/// Large-scale fading of one link. The total power alpha splits between the
/// deterministic LoS part and the random NLoS part according to the Rician
/// factor; the pure regimes are expressed by explicit flags so that no
/// infinite K ever enters the arithmetic.
struct LinkFading {
  double alpha = 1.0;
  Regime regime = Regime::general;
  double rician_k = 0.0;  // linear, used only in the general regime

  double los_power() const {
    switch (regime) {
      case Regime::pure_los:
        return alpha;
      case Regime::pure_nlos:
        return 0.0;
      default:
        return rician_k * alpha / (rician_k + 1.0);
    }
  }
  double nlos_power() const {
    switch (regime) {
      case Regime::pure_los:
        return 0.0;
      case Regime::pure_nlos:
        return alpha;
      default:
        return alpha / (rician_k + 1.0);
    }
  }
  bool has_los() const { return los_power() > 0.0; }
};

struct LinkParams {
  LinkAngles angles;
  LinkFading fading;
  std::optional<double> distance_m;          // resolved distance, if known
  std::optional<double> path_loss_exponent;  // exponent behind a derived alpha
};

/// Quasi-static phase shifts, every entry in [0, 2*pi). For single-IRS
/// systems phi1 holds the lone panel's phases and phi2 stays empty.
struct PhaseShifts {
  VectorXd phi1;
  VectorXd phi2;
};

/// Full description of one deployment. Links are named by the node pair they
/// connect: bs_irs1 is BS -> IRS 1, inter_irs is IRS 1 -> IRS 2, irs2_user is
/// IRS 2 -> user, and so on. The optional irs0 members describe the
/// single-IRS counterpart panel.
struct ScenarioConfig {
  double d_over_lambda = 0.5;

  ArraySpec bs{2, 2};
  ArraySpec irs1{1, 1};
  ArraySpec irs2{1, 1};
  std::optional<ArraySpec> irs0;

  LinkParams bs_irs1, bs_irs2, inter_irs, bs_user, irs1_user, irs2_user;
  std::optional<LinkParams> bs_irs0, irs0_user;

  double tx_power_w = 1.0;
  double noise_power_w = 1.0;
  std::uint64_t rng_seed = 1;

  std::optional<Vec3> pos_bs, pos_user, pos_irs1, pos_irs2, pos_irs0;

  double snr_scale() const { return tx_power_w / noise_power_w; }

  bool has_sirs_links() const {
    return irs0.has_value() && bs_irs0.has_value() && irs0_user.has_value();
  }

  /// pure_los / pure_nlos iff every two-IRS link carries the flag.
  Regime regime() const {
    const LinkFading* links[] = {&bs_irs1.fading,   &bs_irs2.fading,
                                 &inter_irs.fading, &bs_user.fading,
                                 &irs1_user.fading, &irs2_user.fading};
    bool all_los = true, all_nlos = true;
    for (const auto* f : links) {
      all_los = all_los && f->regime == Regime::pure_los;
      all_nlos = all_nlos && f->regime == Regime::pure_nlos;
    }
    if (all_los) return Regime::pure_los;
    if (all_nlos) return Regime::pure_nlos;
    return Regime::general;
  }

  void validate() const;
};

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::pure_los:
      return "pure_los";
    case Regime::pure_nlos:
      return "pure_nlos";
    default:
      return "general";
  }
}

}  // namespace dirsim
