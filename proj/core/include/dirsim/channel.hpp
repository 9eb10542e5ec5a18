#pragma once

#include "dirsim/rng.hpp"
#include "dirsim/types.hpp"

namespace dirsim {

/// Normalized LoS components. Matrix links are rank-1 outer products of the
/// arrival and departure steering vectors; user-side links are the departure
/// steering vector of the transmitting array. All entries have unit modulus.
struct LosComponents {
  MatrixXcd h_s1;  // T1 x TS
  MatrixXcd h_s2;  // T2 x TS
  MatrixXcd h_12;  // T2 x T1
  VectorXcd h_su;  // TS
  VectorXcd h_1u;  // T1
  VectorXcd h_2u;  // T2
  MatrixXcd h_s0;  // T x TS, empty unless the single-IRS links are configured
  VectorXcd h_0u;  // T
};

LosComponents los_components(const ScenarioConfig& cfg);

/// One slot's channel draw (scaled Rician composition, not normalized).
struct ChannelRealization {
  MatrixXcd h_s1, h_s2, h_12;
  VectorXcd h_su, h_1u, h_2u;
  MatrixXcd h_s0;
  VectorXcd h_0u;
};

/// i.i.d. CN(0,1) matrix; entries drawn column-major.
MatrixXcd draw_nlos(int rows, int cols, CounterRng& rng);

/// sqrt(alpha) * (sqrt(K/(K+1)) LoS + sqrt(1/(K+1)) NLoS) per link, with the
/// pure regimes keeping only the respective component. Channels are drawn in
/// a fixed order so a given (seed, stream) reproduces bit-identically.
ChannelRealization assemble_rician(const ScenarioConfig& cfg, CounterRng& rng);

/// Unit phasors exp(-j*phi), the diagonal of the reflection matrix.
VectorXcd unit_phasors(const VectorXd& phi);

/// Entries of the row vector h_e^H: direct path, both single-reflection
/// cascades, and the double-reflection cascade through the inter-IRS link.
VectorXcd equivalent_channel(const ChannelRealization& real,
                             const PhaseShifts& ph);

}  // namespace dirsim
