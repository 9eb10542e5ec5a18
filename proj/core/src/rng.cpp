#include "dirsim/rng.hpp"

#include <cmath>

namespace dirsim {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
constexpr double kTwoPiLocal = 6.283185307179586476925286766559;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGolden) ^ (stream * 0xda942042e4dd58b5ull + 1))) {}

std::uint64_t CounterRng::next_u64() {
  return mix64(key_ + (++counter_) * kGolden);
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::complex<double> CounterRng::complex_gaussian() {
  // Box-Muller on (0,1] x [0,1); the sqrt(-log u) radius already carries the
  // 1/sqrt(2) per-component scaling of CN(0,1).
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-std::log(u1));
  const double theta = kTwoPiLocal * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace dirsim
