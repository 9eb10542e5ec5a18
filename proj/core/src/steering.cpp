#include "dirsim/steering.hpp"

#include <cmath>
#include <stdexcept>

namespace dirsim {

double wrap_phase(double x) {
  if (!std::isfinite(x)) throw std::domain_error("wrap_phase: non-finite input");
  double r = x - kTwoPi * std::floor(x / kTwoPi);
  if (r >= kTwoPi) r -= kTwoPi;  // guards against floor rounding at the seam
  if (r < 0.0) r = 0.0;
  return r;
}

VectorXd wrap_phase(const VectorXd& x) {
  VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = wrap_phase(x[i]);
  return out;
}

double phase_offset(double x_h, double x_v, int m, int n, double d_over_lambda) {
  return kTwoPi * d_over_lambda * std::sin(x_v) *
         ((m - 1) * std::cos(x_h) + (n - 1) * std::sin(x_h));
}

VectorXcd steering_vector(double x_h, double x_v, const ArraySpec& arr,
                          double d_over_lambda) {
  VectorXcd a(arr.size());
  // column-major vec of the rows x cols grid: index = (n-1)*rows + (m-1)
  for (int n = 1; n <= arr.cols; ++n)
    for (int m = 1; m <= arr.rows; ++m) {
      const double f = phase_offset(x_h, x_v, m, n, d_over_lambda);
      a[(n - 1) * arr.rows + (m - 1)] = cxd(std::cos(f), std::sin(f));
    }
  return a;
}

double path_loss(double distance_m, double exponent) {
  if (!(distance_m > 0.0))
    throw std::domain_error("path_loss: distance must be positive");
  return 1.0 / (1000.0 * std::pow(distance_m, exponent));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

ArraySpec square_array(int total) {
  if (total < 1) throw std::domain_error("square_array: total must be >= 1");
  for (int m = static_cast<int>(std::sqrt(static_cast<double>(total))); m >= 1;
       --m)
    if (total % m == 0) return ArraySpec{m, total / m};
  return ArraySpec{1, total};
}

std::pair<double, double> direction_angles(const Vec3& from, const Vec3& to) {
  const double dx = to.x - from.x, dy = to.y - from.y, dz = to.z - from.z;
  const double horiz = std::sqrt(dx * dx + dy * dy);
  return {wrap_phase(std::atan2(dy, dx)), wrap_phase(std::atan2(dz, horiz))};
}

}  // namespace dirsim
