#include "doctest.h"

#include "qsl/brachistochrone.hpp"
#include "qsl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix pauli(int axis) {
  Matrix m(2, 2);
  if (axis == 0)
    m << 0, 1, 1, 0;
  else if (axis == 1)
    m << 0, Complex(0, -1), Complex(0, 1), 0;
  else
    m << 1, 0, 0, -1;
  return m;
}

Matrix traceless(const Matrix& h) {
  return h - Matrix::Identity(h.rows(), h.cols()) * (h.trace() / double(h.rows()));
}

DensityMatrix bloch_state(double x, double y, double z) {
  Matrix m = 0.5 * (Matrix::Identity(2, 2) + x * pauli(0) + y * pauli(1) + z * pauli(2));
  return DensityMatrix(m);
}

}  // namespace

TEST_CASE("connect_unitary maps rho to sigma exactly") {
  SampleStream s(71);
  for (int rep = 0; rep < 20; ++rep) {
    int d = 2 + rep % 5;
    IsospectralPair pair = isospectral_pair(d, s);
    RealVector phases(d);
    for (int k = 0; k < d; ++k) phases(k) = 2.0 * kPi * s.uniform();
    Matrix gate = connect_unitary(pair.rho, pair.sigma, phases);
    CHECK(is_unitary(gate, 1e-9));
    CHECK((gate * pair.rho.matrix() * gate.adjoint() - pair.sigma.matrix()).norm() <= 1e-9);
  }

  // Identity-like gate for a diagonal fixed problem at zero phases.
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.2;
  DensityMatrix rho(diag);
  Matrix gate = connect_unitary(rho, rho, RealVector::Zero(3));
  CHECK((gate * rho.matrix() * gate.adjoint() - rho.matrix()).norm() <= 1e-12);

  // Spectrum mismatch is rejected.
  SampleStream s2(72);
  DensityMatrix a = bures_state(3, s2), b = bures_state(3, s2);
  CHECK_THROWS_AS(connect_unitary(a, b, RealVector::Zero(3)), Error);
}

TEST_CASE("qubit phase choices give the known generators") {
  double p = 0.8;
  DensityMatrix rho = bloch_state(p, 0, 0);
  DensityMatrix sigma = bloch_state(0, p, 0);

  RealVector phases_z(2);
  phases_z << kPi / 4, kPi / 4;
  Matrix h_z = log_unitary(connect_unitary(rho, sigma, phases_z)).hamiltonian;
  CHECK((traceless(h_z) - (kPi / 4) * pauli(2)).norm() <= 1e-10);

  RealVector phases_xy(2);
  phases_xy << 3 * kPi / 4, -kPi / 4;
  Matrix h_xy = log_unitary(connect_unitary(rho, sigma, phases_xy)).hamiltonian;
  Matrix expected = (std::sqrt(2.0) / 4) * kPi * (pauli(0) + pauli(1));
  CHECK((traceless(h_xy) - expected).norm() <= 1e-10);

  // Both drive rho to sigma.
  for (const Matrix& h : {h_z, h_xy}) {
    Matrix u = exp_hermitian(h, 1.0);
    CHECK((u * rho.matrix() * u.adjoint() - sigma.matrix()).norm() <= 1e-10);
  }
}

TEST_CASE("mask projects onto the commutant") {
  SampleStream s(73);
  // Commuting input is untouched.
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 0.2;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.5;
  DensityMatrix rho(diag);
  Matrix commuting = Matrix::Zero(3, 3);
  commuting(0, 0) = 1.0;
  commuting(1, 1) = -2.0;
  commuting(2, 2) = 1.0;
  CHECK((mask(commuting, rho) - commuting).norm() <= 1e-12);

  // Non-degenerate diagonal state keeps only the diagonal of H.
  Matrix h = hermitize(ginibre(3, s));
  Matrix kept = mask(h, rho);
  CHECK((kept - Matrix(h.diagonal().asDiagonal())).norm() <= 1e-10);

  // Degenerate (2,1) state keeps the block plus the diagonal; the remainder
  // has no commuting component.
  Matrix dd = Matrix::Zero(3, 3);
  dd(0, 0) = 0.25;
  dd(1, 1) = 0.25;
  dd(2, 2) = 0.5;
  DensityMatrix degen(dd);
  Matrix kept2 = mask(h, degen);
  CHECK((kept2 * degen.matrix() - degen.matrix() * kept2).norm() <= 1e-9);
  Matrix rest = h - kept2;
  CHECK(mask(rest, degen).norm() <= 1e-9);
  CHECK(std::abs(kept2(0, 1) - h(0, 1)) <= 1e-12);  // degenerate block survives
  CHECK(std::abs(kept2(0, 2)) <= 1e-12);            // cross-block entry removed
}

TEST_CASE("solve reaches efficient Hamiltonians on pure pairs") {
  SampleStream s(74);
  for (int d : {2, 4, 8}) {
    for (int rep = 0; rep < 10; ++rep) {
      SampleStream sub = s.substream(d * 100 + rep);
      IsospectralPair pair = isospectral_pair_pure(d, sub);
      RealVector phases(d);
      for (int k = 0; k < d; ++k) phases(k) = 2.0 * kPi * sub.uniform();
      BrachRun run = solve(pair.rho, pair.sigma, phases, 1e-4);
      REQUIRE(run.converged);
      CHECK(run.endpoint_error <= 1e-8);
      CHECK(run.eta >= 1.0 - 1e-4);

      // Gate-time-to-angle ratio: tau Delta E over the Fubini-Study angle.
      Vector psi = pair.rho.eigenvectors().col(d - 1);
      Vector phi = pair.sigma.eigenvectors().col(d - 1);
      double angle = fubini_study(psi, phi);
      double ratio = run.history.back().tau_action / angle;
      CHECK(ratio >= 1.0 - 1e-9);
      CHECK(ratio <= 1.0 + 10.0 * 1e-4);
    }
  }
}

TEST_CASE("solve on mixed pairs keeps the endpoints exact") {
  SampleStream s(75);
  for (int rep = 0; rep < 10; ++rep) {
    SampleStream sub = s.substream(rep);
    IsospectralPair pair = isospectral_pair(4, sub);
    RealVector phases(4);
    for (int k = 0; k < 4; ++k) phases(k) = 2.0 * kPi * sub.uniform();
    BrachRun run = solve(pair.rho, pair.sigma, phases, 1e-2);
    CHECK(run.endpoint_error <= 1e-8);
    if (run.converged) {
      CHECK(run.history.back().h_par_norm <= 1e-2 * run.history.back().h_norm + 1e-15);
      CHECK(run.eta_star >= 1.0 - 10.0 * 1e-2);
      CHECK(run.ratio_to_qsl >= 1.0 - 1e-8);
    }
  }

  // Highly degenerate spectra admit solutions that sit on the bound; the
  // convergence threshold leaves a spread, so saturation shows up as the
  // best run of a batch.
  double best_ratio = 1e9;
  for (int rep = 0; rep < 8; ++rep) {
    SampleStream sub = s.substream(1000 + rep);
    IsospectralPair pair = isospectral_pair(4, sub, {3, 1});
    RealVector phases(4);
    for (int k = 0; k < 4; ++k) phases(k) = 2.0 * kPi * sub.uniform();
    BrachRun run = solve(pair.rho, pair.sigma, phases, 1e-2);
    REQUIRE(run.converged);
    CHECK(run.ratio_to_qsl >= 1.0 - 1e-8);
    best_ratio = std::min(best_ratio, run.ratio_to_qsl);
  }
  CHECK(best_ratio <= 1.0 + 10.0 * 1e-2);
}

TEST_CASE("fixed-point initialization stops immediately") {
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.2;
  DensityMatrix rho(diag);
  BrachRun run = solve(rho, rho, RealVector::Zero(3), 1e-4);
  CHECK(run.converged);
  CHECK(run.iterations == 0);
  CHECK(run.history.size() == 1);
}

TEST_CASE("backward runs mirror forward runs at negated phases") {
  SampleStream s(76);
  for (int rep = 0; rep < 10; ++rep) {
    SampleStream sub = s.substream(rep);
    IsospectralPair pair = isospectral_pair(3, sub);
    RealVector phases(3);
    for (int k = 0; k < 3; ++k) phases(k) = 2.0 * kPi * sub.uniform();

    BrachRun forward = solve(pair.rho, pair.sigma, phases, 1e-3);
    BrachRun backward = solve(pair.sigma, pair.rho, -phases, 1e-3, BrachVariant::Backward);
    REQUIRE(forward.history.size() == backward.history.size());
    for (size_t j = 0; j < forward.history.size(); ++j) {
      // Phase sequences coincide up to sign and a global rotation.
      RealVector diff = forward.history[j].phases + backward.history[j].phases;
      double base = diff(0);
      for (int k = 0; k < 3; ++k) {
        double delta = std::remainder(diff(k) - base, 2.0 * kPi);
        CHECK(std::abs(delta) <= 1e-6);
      }
    }
    CHECK((forward.final_hamiltonian + backward.final_hamiltonian).norm() <=
          1e-6 * std::max(1.0, forward.final_hamiltonian.norm()));
  }
}

TEST_CASE("two-sided variant converges to the same targets") {
  SampleStream s(77);
  IsospectralPair pair = isospectral_pair(3, s);
  RealVector phases(3);
  for (int k = 0; k < 3; ++k) phases(k) = 2.0 * kPi * s.uniform();
  BrachRun run = solve(pair.rho, pair.sigma, phases, 1e-3, BrachVariant::TwoSided);
  CHECK(run.endpoint_error <= 1e-8);
  if (run.converged) {
    CHECK(mask(run.final_hamiltonian, pair.rho).norm() <=
          1e-3 * run.final_hamiltonian.norm() + 1e-12);
    CHECK(mask(run.final_hamiltonian, pair.sigma).norm() <=
          1e-3 * run.final_hamiltonian.norm() + 1e-12);
  }
}

TEST_CASE("efficiency measures") {
  SampleStream s(78);
  DensityMatrix rho = bures_state(3, s);
  CHECK_THROWS_AS(efficiency_eta(Matrix::Zero(3, 3), rho), Error);
  CHECK_THROWS_AS(efficiency_eta_star(Matrix::Zero(3, 3), rho), Error);

  Matrix h = random_hamiltonian(3, s);
  double eta = efficiency_eta(h, rho);
  double eta_star = efficiency_eta_star(h, rho);
  CHECK(eta >= 0.0);
  CHECK(eta <= 1.0 + 1e-12);
  CHECK(eta_star >= 0.0);
  CHECK(eta_star <= 1.0 + 1e-12);

  // eta_star saturates when the commuting component vanishes.
  IsospectralPair pair = isospectral_pair_pure(3, s);
  RealVector phases(3);
  for (int k = 0; k < 3; ++k) phases(k) = 2.0 * kPi * s.uniform();
  BrachOptions opts;
  opts.max_iterations = 5000;
  BrachRun run = solve(pair.rho, pair.sigma, phases, 1e-8, BrachVariant::Forward, opts);
  REQUIRE(run.converged);
  CHECK(run.history.back().h_par_norm <= 1e-8 * run.history.back().h_norm);
  CHECK(run.eta_star >= 1.0 - 1e-6);

  // Commuting Hamiltonians have zero star efficiency.
  Matrix commuting = rho.eigenvectors() * RealVector::LinSpaced(3, -1.0, 1.0).cast<Complex>().asDiagonal() *
                     rho.eigenvectors().adjoint();
  CHECK(efficiency_eta_star(hermitize(commuting), rho) <= 1e-9);
}

TEST_CASE("evolution time in action units") {
  SampleStream s(79);
  // Optimal drive between orthogonal pure states: tau Delta E = pi/2.
  Matrix frame = haar_unitary(3, s);
  Vector psi = frame.col(0), phi = frame.col(1);
  double omega = 0.9;
  Matrix h = omega * hermitize(psi * phi.adjoint() + phi * psi.adjoint());
  // Gate time for the orthogonal flip is pi/(2 omega); in action units pi/2.
  DensityMatrix rho = DensityMatrix::pure(psi);
  double action = evolution_time(h, rho) * (kPi / (2.0 * omega));
  CHECK(action == doctest::Approx(kPi / 2).epsilon(1e-10));

  // Rescaling H while shrinking the gate time keeps the action fixed.
  Matrix h2 = 2.0 * h;
  CHECK(evolution_time(h2, rho) * (kPi / (4.0 * omega)) == doctest::Approx(kPi / 2).epsilon(1e-10));

  // With an explicit deviation constraint the physical duration comes back.
  CHECK(evolution_time(h, rho, omega) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("perturbation study") {
  SampleStream s(80);
  IsospectralPair pair = isospectral_pair(3, s);
  RealVector phases(3);
  for (int k = 0; k < 3; ++k) phases(k) = 2.0 * kPi * s.uniform();

  SampleStream noise(81);
  CHECK(perturbation_study(pair.rho, pair.sigma, 0.0, PerturbKind::Unitary, noise, 1e-3, phases) <=
        1e-12);

  // Small perturbations relative to the threshold stay in a narrow band.
  double eps = 1e-2;
  for (double delta : {1e-5, 1e-4}) {
    SampleStream n2(82);
    double dev =
        perturbation_study(pair.rho, pair.sigma, delta, PerturbKind::Unitary, n2, eps, phases);
    CHECK(dev <= 10.0 * delta / eps + 1e-6);
  }

  // Unitary perturbations keep the pair isospectral (solve would throw otherwise).
  SampleStream n3(83);
  double dev = perturbation_study(pair.rho, pair.sigma, 0.3, PerturbKind::Unitary, n3, 1e-3, phases);
  CHECK(std::isfinite(dev));
}

TEST_CASE("multi-start returns the fastest converged run") {
  SampleStream s(84);
  IsospectralPair pair = isospectral_pair(4, s);

  SampleStream m1(85);
  MultiStartResult single = multi_start(pair.rho, pair.sigma, 1, 1e-2, m1);
  REQUIRE(single.best.has_value());
  SampleStream m2(85);
  RealVector phases(4);
  SampleStream sub = m2.substream(0);
  for (int k = 0; k < 4; ++k) phases(k) = 2.0 * kPi * sub.uniform();
  BrachRun direct = solve(pair.rho, pair.sigma, phases, 1e-2);
  CHECK(single.best->iterations == direct.iterations);

  SampleStream m3(86);
  MultiStartResult multi = multi_start(pair.rho, pair.sigma, 16, 1e-2, m3);
  REQUIRE(multi.best.has_value());
  for (int count : multi.iteration_counts) CHECK(multi.best->iterations <= count);

  // Deterministic under a fixed stream.
  SampleStream m4(86);
  MultiStartResult again = multi_start(pair.rho, pair.sigma, 16, 1e-2, m4);
  CHECK(again.iteration_counts == multi.iteration_counts);
}

TEST_CASE("multi-start beats the single-run 20th percentile") {
  SampleStream s(87);
  IsospectralPair pair = isospectral_pair(8, s);

  // Empirical single-run iteration distribution over random phases.
  std::vector<int> counts;
  SampleStream phase_stream(88);
  for (int i = 0; i < 60; ++i) {
    SampleStream sub = phase_stream.substream(1000 + i);
    RealVector phases(8);
    for (int k = 0; k < 8; ++k) phases(k) = 2.0 * kPi * sub.uniform();
    BrachRun run = solve(pair.rho, pair.sigma, phases, 1e-2);
    counts.push_back(run.converged ? run.iterations : 1001);
  }
  std::sort(counts.begin(), counts.end());
  int p20 = counts[counts.size() / 5];

  SampleStream m(89);
  MultiStartResult multi = multi_start(pair.rho, pair.sigma, 32, 1e-2, m);
  REQUIRE(multi.best.has_value());
  CHECK(multi.best->iterations <= p20);
}
