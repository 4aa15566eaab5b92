#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qsl/states.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Reproducible random sampling. A fixed generator (xoshiro256** keyed through
// splitmix64, normals via Box-Muller) makes every sequence bit-exact for a
// given (seed, stream). Substreams are derived from a counter so parallel
// sweeps are order-independent.
// ---------------------------------------------------------------------------

class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed, std::uint64_t stream = 0);

  /// Independent child stream for sample `index`; does not disturb the parent.
  SampleStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();   // standard normal

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  static constexpr const char* kAlgorithm = "splitmix64/xoshiro256**+box-muller";

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Complex Ginibre matrix: entries x + iy with x, y independent N(0, 1).
Matrix ginibre(int d, SampleStream& s);

/// Haar-random unitary from the QR of a Ginibre matrix with the diagonal
/// phase correction (R_kk made positive real).
Matrix haar_unitary(int d, SampleStream& s);

/// Bures-ensemble random state, rho = (1+U) A A^dag (1+U^dag) / tr[...].
/// Degenerate draws with vanishing normalization are resampled; the count of
/// such retries is reported through `resamples` when non-null.
DensityMatrix bures_state(int d, SampleStream& s, int* resamples = nullptr);

/// Random Hamiltonian H = i log U with U Haar; eigenvalues in (-pi, pi].
Matrix random_hamiltonian(int d, SampleStream& s);

struct IsospectralPair {
  DensityMatrix rho;
  DensityMatrix sigma;
};

/// Mixed pair with a Bures-sampled spectrum; sigma = V rho V^dag with V Haar,
/// built from the same eigenvalue list so the spectra match exactly.
IsospectralPair isospectral_pair(int d, SampleStream& s);
IsospectralPair isospectral_pair_pure(int d, SampleStream& s);
/// Spectrum with prescribed eigenvalue multiplicities (must sum to d).
IsospectralPair isospectral_pair(int d, SampleStream& s, const std::vector<int>& multiplicities);

/// Haar-random unit vector.
Vector haar_vector(int d, SampleStream& s);

}  // namespace qsl
