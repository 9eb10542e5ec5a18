#pragma once

#include <utility>

#include "dirsim/types.hpp"

namespace dirsim {

/// Wraps x into [0, 2*pi). Throws std::domain_error for non-finite input.
double wrap_phase(double x);
VectorXd wrap_phase(const VectorXd& x);

/// Phase offset accumulated by the (m, n)-th element of a URA for a plane
/// wave with azimuth x_h and elevation x_v; m and n are 1-based.
double phase_offset(double x_h, double x_v, int m, int n, double d_over_lambda);

/// Unit-modulus URA steering vector, vectorized column-major over the
/// rows x cols grid (row index varies fastest).
VectorXcd steering_vector(double x_h, double x_v, const ArraySpec& arr,
                          double d_over_lambda);

/// Distance-based large-scale power 1 / (1000 * d^exponent), i.e.
/// -(30 + 10 * exponent * log10(d)) dB. Throws for d <= 0.
double path_loss(double distance_m, double exponent);

double db_to_linear(double db);
double linear_to_db(double lin);
double dbm_to_watts(double dbm);

/// Most-square rows x cols factorization of a total element count.
ArraySpec square_array(int total);

/// Departure angles of the displacement from `from` to `to`:
/// azimuth atan2(dy, dx), elevation atan2(dz, horizontal range),
/// both wrapped into [0, 2*pi).
std::pair<double, double> direction_angles(const Vec3& from, const Vec3& to);

}  // namespace dirsim
