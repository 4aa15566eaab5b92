#include "doctest.h"

#include "qsl/ensembles.hpp"
#include "qsl/metrics.hpp"

#include <cmath>
#include <numbers>

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;

// Analytic Bures angle for the lambda-mixed qubit pair at basis angle theta.
double qubit_bures_angle(double theta, double lambda) {
  double k = 1.0 - 2.0 * lambda;
  double c2t = std::cos(2.0 * theta), ct = std::cos(theta), st = std::sin(theta);
  double fp = 0.5 * std::sqrt(1.0 + k * k * c2t + 2.0 * k * ct * std::sqrt(1.0 - k * k * st * st));
  double fm = 0.5 * std::sqrt(1.0 + k * k * c2t - 2.0 * k * ct * std::sqrt(1.0 - k * k * st * st));
  return std::acos(fp + fm);
}

// Mixed qubit pair: rho diagonal (lambda, 1-lambda), sigma rotated by theta
// under the optimal off-diagonal coupling.
std::pair<DensityMatrix, DensityMatrix> qubit_pair(double theta, double lambda) {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = lambda;
  rho(1, 1) = 1.0 - lambda;
  Matrix h(2, 2);
  h << 0, 1, 1, 0;
  Matrix u = exp_hermitian(h, theta);
  return {DensityMatrix(rho), DensityMatrix(rho).conjugated(u)};
}

}  // namespace

TEST_CASE("fubini_study") {
  Vector a(2), b(2), c(2);
  a << 1, 0;
  b << 0, 1;
  c << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(fubini_study(a, a) == doctest::Approx(0.0));
  CHECK(fubini_study(a, b) == doctest::Approx(kPi / 2));
  CHECK(fubini_study(a, c) == doctest::Approx(kPi / 4));
}

TEST_CASE("fidelity and bures angle") {
  SampleStream s(41);
  DensityMatrix rho = bures_state(3, s);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0));
  CHECK(bures_angle(rho, rho) == doctest::Approx(0.0).epsilon(1e-6));

  Vector e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  DensityMatrix p0 = DensityMatrix::pure(e0), p1 = DensityMatrix::pure(e1);
  CHECK(fidelity(p0, p1) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(bures_angle(p0, p1) == doctest::Approx(kPi / 2));

  // Symmetry on random mixed pairs.
  DensityMatrix sig = bures_state(3, s);
  CHECK(std::abs(fidelity(rho, sig) - fidelity(sig, rho)) <= 1e-9);

  // Analytic qubit value against the eigen-route fidelity.
  for (double lambda : {0.1, 0.3, 0.45}) {
    auto [r, q] = qubit_pair(kPi / 3, lambda);
    CHECK(std::abs(bures_angle(r, q) - qubit_bures_angle(kPi / 3, lambda)) <= 1e-9);
  }
}

TEST_CASE("gba_theta") {
  SampleStream s(42);
  DensityMatrix rho = bures_state(4, s);
  CHECK(gba_theta(rho, rho) == doctest::Approx(0.0).epsilon(1e-6));

  // Bloch vectors (p,0,0) and (0,p,0) subtend a right angle for any p.
  GeneratorBasis b2 = gell_mann_basis(2);
  for (double p : {1.0, 0.6, 0.2}) {
    BlochVector rx{2, RealVector::Zero(3)};
    rx.r(0) = p;
    BlochVector ry{2, RealVector::Zero(3)};
    ry.r(1) = p;
    CHECK(gba_theta(from_bloch(rx, b2), from_bloch(ry, b2)) == doctest::Approx(kPi / 2));
    BlochVector rneg{2, RealVector::Zero(3)};
    rneg.r(0) = -p;
    CHECK(gba_theta(from_bloch(rx, b2), from_bloch(rneg, b2)) == doctest::Approx(kPi));
  }

  DensityMatrix mm = DensityMatrix::maximally_mixed(3);
  CHECK_THROWS_AS(gba_theta(mm, mm), Error);
  DensityMatrix other = bures_state(4, s);
  if (std::abs(other.purity() - rho.purity()) > 1e-6)
    CHECK_THROWS_AS(gba_theta(rho, other), Error);
}

TEST_CASE("phi_angle reduces to fubini_study on pure states") {
  SampleStream s(43);
  Vector psi = haar_vector(4, s), phi = haar_vector(4, s);
  double fs = fubini_study(psi, phi);
  CHECK(phi_angle(DensityMatrix::pure(psi), DensityMatrix::pure(phi)) ==
        doctest::Approx(fs).epsilon(1e-9));

  DensityMatrix rho = bures_state(3, s);
  CHECK(phi_angle(rho, rho) == doctest::Approx(0.0).epsilon(1e-6));

  // Analytic form for the lambda-mixed qubit pair, k = 1 - 2 lambda:
  // Phi = arccos sqrt((1 + k^2 cos 2 theta)/(1 + k^2)).
  double theta = kPi / 5, lambda = 0.2, k = 1.0 - 2.0 * lambda;
  auto [r, q] = qubit_pair(theta, lambda);
  double expected = std::acos(std::sqrt((1.0 + k * k * std::cos(2 * theta)) / (1.0 + k * k)));
  CHECK(phi_angle(r, q) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("euclidean distance") {
  Vector e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  CHECK(euclid_d(DensityMatrix::pure(e0), DensityMatrix::pure(e1)) == doctest::Approx(2.0));

  SampleStream s(44);
  DensityMatrix rho = bures_state(3, s), sig = bures_state(3, s), phi = bures_state(3, s);
  CHECK(euclid_d(rho, rho) == doctest::Approx(0.0));
  CHECK(euclid_d(rho, sig) == doctest::Approx(euclid_d(sig, rho)));

  // Mixing toward a common state contracts the distance linearly.
  for (double eps : {0.1, 0.5, 0.9}) {
    double before = euclid_d(rho, sig);
    double after = euclid_d(mix_with(rho, phi, eps), mix_with(sig, phi, eps));
    CHECK(after == doctest::Approx(eps * before).epsilon(1e-10));
  }

  // GBV route agrees with the Hilbert-Schmidt route.
  GeneratorBasis basis = gell_mann_basis(3);
  double via_bloch = (to_bloch(rho, basis).r - to_bloch(sig, basis).r).norm();
  CHECK(euclid_d(rho, sig) == doctest::Approx(via_bloch).epsilon(1e-10));
}

TEST_CASE("sub-fidelity, affinity, relative purity") {
  SampleStream s(45);
  Vector psi = haar_vector(3, s);
  DensityMatrix pure = DensityMatrix::pure(psi);
  CHECK(sub_fidelity(pure, pure) == doctest::Approx(1.0));
  CHECK(affinity(pure, pure) == doctest::Approx(1.0));
  CHECK(relative_purity(pure, pure) == doctest::Approx(1.0));

  // For pure rho, sub-fidelity equals fidelity equals sqrt(tr[rho sigma]).
  // The inner square root turns an O(1e-16) cancellation into O(1e-8).
  DensityMatrix sig = bures_state(3, s);
  double z = overlap(pure, sig);
  CHECK(std::abs(sub_fidelity(pure, sig) - std::sqrt(z)) <= 1e-7);
  CHECK(fidelity(pure, sig) == doctest::Approx(std::sqrt(z)).epsilon(1e-9));

  // E <= F on a Bures sweep.
  for (int rep = 0; rep < 10000; ++rep) {
    DensityMatrix a = bures_state(3, s), b = bures_state(3, s);
    CHECK(sub_fidelity(a, b) <= fidelity(a, b) + 1e-9);
  }
}

TEST_CASE("unitary invariance of the measures") {
  SampleStream s(46);
  IsospectralPair pair = isospectral_pair(3, s);
  Matrix u = haar_unitary(3, s);
  DensityMatrix ur = pair.rho.conjugated(u), us = pair.sigma.conjugated(u);
  CHECK(std::abs(fidelity(pair.rho, pair.sigma) - fidelity(ur, us)) <= 1e-9);
  CHECK(std::abs(gba_theta(pair.rho, pair.sigma) - gba_theta(ur, us)) <= 1e-9);
  CHECK(std::abs(phi_angle(pair.rho, pair.sigma) - phi_angle(ur, us)) <= 1e-9);
  CHECK(std::abs(euclid_d(pair.rho, pair.sigma) - euclid_d(ur, us)) <= 1e-9);
  CHECK(std::abs(sub_fidelity(pair.rho, pair.sigma) - sub_fidelity(ur, us)) <= 1e-9);
  CHECK(std::abs(affinity(pair.rho, pair.sigma) - affinity(ur, us)) <= 1e-9);
}

TEST_CASE("distance axioms on random triples") {
  SampleStream s(47);
  for (int rep = 0; rep < 50; ++rep) {
    // Equal-purity triple from a shared spectrum.
    DensityMatrix seed = bures_state(3, s);
    Matrix u1 = haar_unitary(3, s), u2 = haar_unitary(3, s);
    DensityMatrix a = seed, b = seed.conjugated(u1), c = seed.conjugated(u2);
    CHECK(gba_theta(a, b) == doctest::Approx(gba_theta(b, a)).epsilon(1e-9));
    CHECK(gba_theta(a, c) <= gba_theta(a, b) + gba_theta(b, c) + 1e-9);
    CHECK(phi_angle(a, c) <= phi_angle(a, b) + phi_angle(b, c) + 1e-9);

    DensityMatrix x = bures_state(3, s), y = bures_state(3, s), z = bures_state(3, s);
    CHECK(euclid_d(x, z) <= euclid_d(x, y) + euclid_d(y, z) + 1e-9);
  }
}

TEST_CASE("composition with an ancilla scales the HS distance by its purity root") {
  SampleStream s(48);
  DensityMatrix rho = bures_state(3, s), sig = bures_state(3, s);
  DensityMatrix alpha = bures_state(2, s);
  Matrix diff = kron(rho.matrix(), alpha.matrix()) - kron(sig.matrix(), alpha.matrix());
  double lhs = diff.norm();
  double rhs = (rho.matrix() - sig.matrix()).norm() * std::sqrt(alpha.purity());
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}
