#include "qsl/ensembles.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace qsl {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::uint64_t key = seed;
  std::uint64_t mixer = stream;
  key ^= splitmix64(mixer);
  for (auto& word : s_) word = splitmix64(key);
}

SampleStream SampleStream::substream(std::uint64_t index) const {
  std::uint64_t mixer = stream_;
  std::uint64_t child = splitmix64(mixer) ^ (index + 0x9E3779B97F4A7C15ULL);
  std::uint64_t scramble = child;
  return SampleStream(seed_, splitmix64(scramble));
}

std::uint64_t SampleStream::next_u64() {
  // xoshiro256**
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double SampleStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double SampleStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

Matrix ginibre(int d, SampleStream& s) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "ginibre: d must be >= 1");
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double x = s.normal();
      double y = s.normal();
      a(i, j) = Complex(x, y);
    }
  return a;
}

Matrix haar_unitary(int d, SampleStream& s) {
  Matrix a = ginibre(d, s);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  Vector phase(d);
  for (int k = 0; k < d; ++k) {
    Complex rkk = r(k, k);
    phase(k) = std::abs(rkk) > 0.0 ? rkk / std::abs(rkk) : Complex(1.0, 0.0);
  }
  return q * phase.asDiagonal();
}

DensityMatrix bures_state(int d, SampleStream& s, int* resamples) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "bures_state: d must be >= 2");
  int retries = 0;
  for (;;) {
    Matrix a = ginibre(d, s);
    Matrix u = haar_unitary(d, s);
    Matrix g = Matrix::Identity(d, d) + u;
    Matrix m = g * a * a.adjoint() * g.adjoint();
    double tr = m.trace().real();
    if (tr > 1e-14) {
      if (resamples) *resamples = retries;
      return DensityMatrix(hermitize(m / tr));
    }
    ++retries;
  }
}

Matrix random_hamiltonian(int d, SampleStream& s) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "random_hamiltonian: d must be >= 2");
  return log_unitary(haar_unitary(d, s)).hamiltonian;
}

Vector haar_vector(int d, SampleStream& s) {
  Vector v(d);
  for (int k = 0; k < d; ++k) v(k) = Complex(s.normal(), s.normal());
  double n = v.norm();
  if (n == 0.0) return haar_vector(d, s);
  return v / n;
}

namespace {

IsospectralPair pair_from_spectrum(const RealVector& ascending_probs, int d, SampleStream& s) {
  Matrix basis_r = haar_unitary(d, s);
  Matrix v = haar_unitary(d, s);
  Matrix basis_s = v * basis_r;
  DensityMatrix rho = DensityMatrix::from_eigensystem(ascending_probs, basis_r);
  DensityMatrix sigma = DensityMatrix::from_eigensystem(ascending_probs, basis_s);
  return {rho, sigma};
}

}  // namespace

IsospectralPair isospectral_pair(int d, SampleStream& s) {
  DensityMatrix sample = bures_state(d, s);
  return pair_from_spectrum(sample.spectrum(), d, s);
}

IsospectralPair isospectral_pair_pure(int d, SampleStream& s) {
  RealVector probs = RealVector::Zero(d);
  probs(d - 1) = 1.0;
  return pair_from_spectrum(probs, d, s);
}

IsospectralPair isospectral_pair(int d, SampleStream& s, const std::vector<int>& multiplicities) {
  int total = 0;
  for (int m : multiplicities) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "isospectral_pair: bad multiplicity");
    total += m;
  }
  if (total != d)
    throw Error(ErrorCode::InvalidArgument, "isospectral_pair: multiplicities must sum to d");
  // Level weights uniform on the simplex; each level's weight is spread evenly
  // over its multiplicity so repeated eigenvalues are exactly equal.
  const int levels = static_cast<int>(multiplicities.size());
  RealVector w(levels);
  for (int i = 0; i < levels; ++i) w(i) = -std::log(1.0 - s.uniform());
  w /= w.sum();
  RealVector probs(d);
  int at = 0;
  for (int i = 0; i < levels; ++i) {
    double lambda = w(i) / multiplicities[i];
    for (int j = 0; j < multiplicities[i]; ++j) probs(at++) = lambda;
  }
  std::sort(probs.data(), probs.data() + probs.size());
  return pair_from_spectrum(probs, d, s);
}

}  // namespace qsl
