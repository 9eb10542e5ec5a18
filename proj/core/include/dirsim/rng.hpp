#pragma once

#include <complex>
#include <cstdint>

namespace dirsim {

/// Counter-based random stream. A draw is a pure function of
/// (seed, stream, counter), so independent streams can be sampled from any
/// thread in any order and still reproduce bit-identical sequences.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform on [0, 1).
  double uniform();

  /// Circularly symmetric complex Gaussian CN(0, 1): real and imaginary
  /// parts are independent N(0, 1/2). Consumes exactly two uniforms.
  std::complex<double> complex_gaussian();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dirsim
