#include <doctest.h>

#include <cmath>

#include "dirsim/rng.hpp"
#include "dirsim/steering.hpp"

using namespace dirsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent long-double recomputation of the per-element phase offset.
long double phase_offset_ref(long double x_h, long double x_v, int m, int n,
                             long double dol) {
  const long double two_pi = 6.283185307179586476925286766559L;
  return two_pi * dol * std::sin(x_v) *
         ((m - 1) * std::cos(x_h) + (n - 1) * std::sin(x_h));
}

}  // namespace

TEST_SUITE_BEGIN("steering");

TEST_CASE("wrap_phase maps onto [0, 2pi)") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(3 * kPi) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(wrap_phase(-kPi / 2) == doctest::Approx(3 * kPi / 2).epsilon(1e-15));
  for (double x : {-123.456, -1e-9, 7.0, 1e6, 2 * kPi, -2 * kPi}) {
    const double w = wrap_phase(x);
    CHECK(w >= 0.0);
    CHECK(w < kTwoPi);
    // same point on the circle
    CHECK(std::cos(w) == doctest::Approx(std::cos(x)).epsilon(1e-7));
    CHECK(std::sin(w) == doctest::Approx(std::sin(x)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(wrap_phase(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(wrap_phase(INFINITY), std::domain_error);
}

TEST_CASE("phase_offset closed form") {
  CHECK(phase_offset(1.234, 0.0, 3, 7, 0.5) == 0.0);
  CHECK(phase_offset(0.0, kPi / 2, 2, 1, 0.5) ==
        doctest::Approx(kPi).epsilon(1e-14));
  const double got = phase_offset(kPi / 4, kPi / 3, 3, 2, 0.5);
  const long double ref = phase_offset_ref(kPi / 4, kPi / 3, 3, 2, 0.5L);
  CHECK(got == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
}

TEST_CASE("steering vector basics") {
  const VectorXcd ones = steering_vector(0.0, 0.0, {2, 2}, 0.5);
  for (int i = 0; i < 4; ++i) {
    CHECK(ones[i].real() == doctest::Approx(1.0));
    CHECK(ones[i].imag() == doctest::Approx(0.0));
  }
  const VectorXcd v_row = steering_vector(0.0, kPi / 2, {2, 1}, 0.5);
  CHECK(v_row[0].real() == doctest::Approx(1.0));
  CHECK(v_row[1].real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(v_row[1].imag()) < 1e-12);
  const VectorXcd v_col = steering_vector(kPi / 2, kPi / 2, {1, 2}, 0.5);
  CHECK(v_col[0].real() == doctest::Approx(1.0));
  CHECK(v_col[1].real() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("steering vector entries are unit modulus and column-major") {
  const double angles[][2] = {{0.3, 1.2}, {4.5, 2.2}, {2.9, 5.8}};
  for (auto [h, v] : angles) {
    const ArraySpec arr{3, 4};
    const VectorXcd a = steering_vector(h, v, arr, 0.5);
    REQUIRE(a.size() == 12);
    for (int i = 0; i < a.size(); ++i)
      CHECK(std::abs(std::abs(a[i]) - 1.0) < 1e-14);
    // vec index of (m, n) is (n-1)*rows + (m-1)
    for (int n = 1; n <= arr.cols; ++n)
      for (int m = 1; m <= arr.rows; ++m) {
        const double f = phase_offset(h, v, m, n, 0.5);
        const cxd expect(std::cos(f), std::sin(f));
        CHECK(std::abs(a[(n - 1) * arr.rows + (m - 1)] - expect) < 1e-14);
      }
  }
}

TEST_CASE("path loss reference points") {
  CHECK(path_loss(10.0, 2.0) == doctest::Approx(1e-5).epsilon(1e-12));
  CHECK(path_loss(1.0, 3.7) == doctest::Approx(1e-3).epsilon(1e-12));
  // BS at (0,-25,1.2), user at (0,25,1), exponent 3.7
  const Vec3 bs{0, -25, 1.2}, user{0, 25, 1};
  const double d = distance(bs, user);
  CHECK(d == doctest::Approx(std::sqrt(50.0 * 50.0 + 0.2 * 0.2)).epsilon(1e-15));
  const double alpha = path_loss(d, 3.7);
  CHECK(alpha ==
        doctest::Approx(1.0 / (1000.0 * std::pow(d, 3.7))).epsilon(1e-15));
  CHECK_THROWS_AS(path_loss(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(path_loss(-3.0, 2.0), std::domain_error);
}

TEST_CASE("db conversions") {
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(5.0) == doctest::Approx(3.1622776601683794e-3));
  CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
}

TEST_CASE("square_array factorizations") {
  CHECK(square_array(1).rows == 1);
  CHECK(square_array(36).rows == 6);
  CHECK(square_array(36).cols == 6);
  CHECK(square_array(40).rows == 5);
  CHECK(square_array(40).cols == 8);
  CHECK(square_array(7).rows == 1);
  CHECK(square_array(7).cols == 7);
  for (int t : {2, 12, 100, 144, 200}) {
    const ArraySpec a = square_array(t);
    CHECK(a.rows * a.cols == t);
    CHECK(a.rows <= a.cols);
  }
}

TEST_CASE("counter rng streams are deterministic and independent") {
  CounterRng a(42, 3), b(42, 3), c(42, 4);
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CounterRng u(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_SUITE_END();
