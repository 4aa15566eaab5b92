#include "doctest.h"

#include "qsl/batteries.hpp"
#include "qsl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;

// Brute-force minimal energy over all d! assignments of rho's spectrum to the
// energy levels.
double brute_force_min_energy(const RealVector& spectrum, const RealVector& energies) {
  const int d = static_cast<int>(spectrum.size());
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double e = 0.0;
    for (int j = 0; j < d; ++j) e += spectrum(perm[j]) * energies(j);
    best = std::min(best, e);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

RealVector fig_levels() {
  RealVector e(3);
  e << 0.0, 0.579, 1.0;
  return e;
}

RealVector fig_populations() {
  // The three displayed digits sum to 0.999; normalize to an exact state.
  RealVector p(3);
  p << 0.538, 0.237, 0.224;
  return p / p.sum();
}

Matrix diag_matrix(const RealVector& v) {
  Matrix m = Matrix::Zero(v.size(), v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) m(i, i) = v(i);
  return m;
}

}  // namespace

TEST_CASE("passive state of the five-level instance") {
  RealVector populations(5);
  populations << 0.1, 0.2, 0.0, 0.3, 0.4;
  RealVector levels(5);
  levels << -2, -1, 0, 1, 2;  // L_z = 1
  DensityMatrix rho(diag_matrix(populations));
  Matrix h0 = diag_matrix(levels);

  PassiveResult passive = passive_state(rho, h0);
  RealVector expected(5);
  expected << 0.4, 0.3, 0.2, 0.1, 0.0;
  for (int j = 0; j < 5; ++j)
    CHECK(passive.state.matrix()(j, j).real() == doctest::Approx(expected(j)).epsilon(1e-12));
  CHECK((passive.unitary * rho.matrix() * passive.unitary.adjoint() - passive.state.matrix())
            .norm() <= 1e-10);

  // Sorted-assignment arithmetic gives 1.7 (the figure caption says 1.8; its
  // own unitary reproduces this passive state, whose gap is 17/10).
  CHECK(ergotropy(rho, h0) == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("ergotropy basics") {
  SampleStream s(91);
  Matrix h0 = hermitize(ginibre(4, s));

  // Thermal states are passive.
  for (double beta : {0.2, 1.0, 5.0}) {
    DensityMatrix gibbs = gibbs_state(h0, beta);
    CHECK(std::abs(ergotropy(gibbs, h0)) <= 1e-10);
    PassiveResult p = passive_state(gibbs, h0);
    CHECK((p.state.matrix() - gibbs.matrix()).norm() <= 1e-9);
  }

  // Nonnegativity and the entropy-matched ceiling on random states.
  for (int rep = 0; rep < 50; ++rep) {
    DensityMatrix rho = bures_state(4, s);
    double w = ergotropy(rho, h0);
    CHECK(w >= -1e-12);
    CHECK(w <= wmax_gibbs_limit(rho, h0) + 1e-9);
  }
}

TEST_CASE("passive energy matches the permutation brute force") {
  SampleStream s(92);
  for (int d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 20; ++rep) {
      DensityMatrix rho = bures_state(d, s);
      Matrix h0 = hermitize(ginibre(d, s));
      EigSystem energy = eig_hermitian(h0);
      PassiveResult passive = passive_state(rho, h0);
      double direct = (passive.state.matrix() * h0).trace().real();
      double brute = brute_force_min_energy(rho.spectrum(), energy.values);
      CHECK(direct == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("work per copy for the three-level instance") {
  RealVector populations = fig_populations();
  RealVector levels = fig_levels();

  CHECK(wmax_per_copy(populations, levels, 1) == doctest::Approx(0.0).epsilon(1e-12));

  // Exact combinatorial value at N = 3: sort 27 product weights against the
  // 27 level sums.
  std::vector<double> probs, sums;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        probs.push_back(populations(a) * populations(b) * populations(c));
        sums.push_back(levels(a) + levels(b) + levels(c));
      }
  std::sort(probs.begin(), probs.end(), std::greater<double>());
  std::sort(sums.begin(), sums.end());
  double passive3 = std::inner_product(probs.begin(), probs.end(), sums.begin(), 0.0);
  double expected3 = populations.dot(levels) - passive3 / 3.0;
  CHECK(wmax_per_copy(populations, levels, 3) == doctest::Approx(expected3).epsilon(1e-14));
  CHECK(expected3 > 0.0);

  // Nondecreasing toward the entropy-matched limit.
  DensityMatrix rho(diag_matrix(populations));
  Matrix h0 = diag_matrix(levels);
  double limit = wmax_gibbs_limit(rho, h0);
  double prev = -1.0;
  for (int n = 1; n <= 8; ++n) {
    double w = wmax_per_copy(populations, levels, n);
    CHECK(w >= prev - 1e-12);
    CHECK(w <= limit + 1e-9);
    prev = w;
  }

  // The resource cap is a hard error.
  CHECK_THROWS_AS(wmax_per_copy(populations, levels, 20), Error);
}

TEST_CASE("complete passivity") {
  RealVector levels = fig_levels();
  Matrix h0 = diag_matrix(levels);

  // Pure ground state stays passive at every copy count.
  Matrix ground = Matrix::Zero(3, 3);
  ground(0, 0) = 1.0;
  CHECK(completely_passive_fail(DensityMatrix(ground), h0, 5) == 0);

  // Thermal qutrit stays passive.
  CHECK(completely_passive_fail(gibbs_state(h0, 1.0), h0, 5) == 0);

  // The figure instance fails by the third copy.
  DensityMatrix fig(diag_matrix(fig_populations()));
  int fail_at = completely_passive_fail(fig, h0, 5);
  CHECK(fail_at > 0);
  CHECK(fail_at <= 3);
}

TEST_CASE("separable extraction schedule") {
  RealVector levels(3);
  levels << 0.0, 0.6, 1.0;

  // Already passive: nothing to do.
  RealVector passive(3);
  passive << 0.5, 0.3, 0.2;
  CHECK(separable_extraction_schedule(passive, levels, 2).empty());

  // Two copies of p|2><2| + (1-p)|3><3|: the hop chain passes through |13>.
  double p = 0.3;
  RealVector populations(3);
  populations << 0.0, p, 1.0 - p;
  std::vector<HopStep> schedule = separable_extraction_schedule(populations, levels, 2);
  REQUIRE(!schedule.empty());
  auto hop_index = [&](int a, int b) { return std::uint64_t(3 * a + b); };
  bool has_first = false, has_second = false;
  for (size_t i = 0; i + 1 < schedule.size(); ++i) {
    if (schedule[i].from == hop_index(2, 2) && schedule[i].to == hop_index(0, 2)) {
      has_first = true;
      if (schedule[i + 1].from == hop_index(0, 2) && schedule[i + 1].to == hop_index(0, 0))
        has_second = true;
    }
  }
  CHECK(has_first);
  CHECK(has_second);

  // Every hop changes exactly one cell index, and the composition equals the
  // direct sorting permutation.
  SampleStream s(93);
  for (int rep = 0; rep < 10; ++rep) {
    RealVector pop(3);
    double a = s.uniform(), b = s.uniform() * (1.0 - a);
    pop << a, b, 1.0 - a - b;
    std::vector<HopStep> steps = separable_extraction_schedule(pop, levels, 3);
    std::vector<std::uint64_t> perm(27);
    std::iota(perm.begin(), perm.end(), std::uint64_t{0});
    for (const HopStep& step : steps) {
      int differing = 0;
      std::uint64_t f = step.from, t = step.to;
      for (int c = 0; c < 3; ++c) {
        if (f % 3 != t % 3) ++differing;
        f /= 3;
        t /= 3;
      }
      CHECK(differing == 1);
      std::swap(perm[step.from], perm[step.to]);
    }
    // Composed permutation sorts the product weights against the level sums.
    std::vector<double> probs(27), sums(27);
    for (int idx = 0; idx < 27; ++idx) {
      int i0 = idx / 9, i1 = (idx / 3) % 3, i2 = idx % 3;
      probs[idx] = pop(i0) * pop(i1) * pop(i2);
      sums[idx] = levels(i0) + levels(i1) + levels(i2);
    }
    double expected = 0.0;
    {
      std::vector<double> ps = probs, es = sums;
      std::sort(ps.begin(), ps.end(), std::greater<double>());
      std::sort(es.begin(), es.end());
      expected = std::inner_product(ps.begin(), ps.end(), es.begin(), 0.0);
    }
    double realized = 0.0;
    for (int idx = 0; idx < 27; ++idx) realized += probs[perm[idx]] * sums[idx];
    CHECK(realized == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("power trace") {
  SampleStream s(94);
  Matrix h0 = Matrix::Zero(2, 2);
  h0(1, 1) = 1.0;

  // Driving that commutes with the internal Hamiltonian deposits nothing.
  DensityMatrix rho = bures_state(2, s);
  Orbit still = unitary_orbit(rho, hermitize(3.0 * h0), 1.0, 17);
  PowerSeries quiet = power_trace(still, h0);
  for (double p : quiet.power) CHECK(std::abs(p) <= 1e-12);
  for (double w : quiet.work) CHECK(std::abs(w) <= 1e-12);

  // Ladder charging deposits N (omega_d - omega_1) at the collective time.
  const int n = 3;
  double e_max = 1.0;
  const std::uint64_t dim = 1 << n;
  Matrix cell = Matrix::Zero(2, 2);
  cell(1, 1) = 2.0;  // omega_d - omega_1 = 2
  Matrix total_h0 = Matrix::Zero(dim, dim);
  for (int l = 0; l < n; ++l) total_h0 += embed_operator(cell, {l}, n, 2);
  Vector ground = Vector::Zero(dim), top = Vector::Zero(dim);
  ground(0) = 1.0;
  top(dim - 1) = 1.0;
  Matrix h_col = e_max * hermitize(top * ground.adjoint() + ground * top.adjoint());
  Orbit charge = unitary_orbit(DensityMatrix::pure(ground), h_col, kPi / (2.0 * e_max), 65);
  PowerSeries series = power_trace(charge, total_h0);
  CHECK(series.work.back() == doctest::Approx(n * 2.0).epsilon(1e-8));
  CHECK(std::abs(series.power.front()) <= 1e-10);
  CHECK(std::abs(series.power.back()) <= 1e-8);

  // Numerical dW/dt agrees with the analytic instantaneous power.
  Orbit fine = unitary_orbit(bures_state(2, s), random_hamiltonian(2, s), 1.0, 1001);
  PowerSeries ps = power_trace(fine, h0);
  for (int k = 1; k + 1 < fine.nodes(); k += 100) {
    double dt = ps.times[k + 1] - ps.times[k - 1];
    double slope = (ps.work[k + 1] - ps.work[k - 1]) / dt;
    CHECK(std::abs(slope - ps.power[k]) <= 1e-5);
  }
}

TEST_CASE("ladder advantage") {
  CHECK(advantage_ladder(1, 2.0).gamma == doctest::Approx(1.0));
  LadderAdvantage adv = advantage_ladder(4, 1.0);
  CHECK(adv.tau_parallel == doctest::Approx(2.0 * kPi));
  CHECK(adv.tau_collective == doctest::Approx(kPi / 2));
  CHECK(adv.gamma == doctest::Approx(4.0));

  for (int n = 1; n <= 5; ++n) CHECK(advantage_ladder_infidelity(n, 1.3) <= 1e-8);
}

TEST_CASE("separable-ball advantage") {
  auto [c1, c2] = advantage_separable_ball(9, 0.5);
  CHECK(c1 == doctest::Approx(3.0));
  CHECK(c2 == doctest::Approx(9.0));
  auto one = advantage_separable_ball(1, 0.7);
  CHECK(one.first == doctest::Approx(1.0));
  CHECK(one.second == doctest::Approx(1.0));

  // Independent of how mixed the cells are; the drive itself lands exactly on
  // the inverted thermal product.
  for (double beta : {0.01, 1.0}) {
    auto g = advantage_separable_ball(4, beta);
    CHECK(g.first == doctest::Approx(2.0));
    CHECK(g.second == doctest::Approx(4.0));
    CHECK(advantage_separable_ball_error(4, beta) <= 1e-10);
  }
}

TEST_CASE("advantage upper bounds") {
  SampleStream s(95);
  AdvantageBoundInput input;
  input.n_cells = 4;
  input.k = 2;
  input.m = 1;
  input.gamma = kPi / 2;

  DensityMatrix rho = bures_state(2, s);
  DensityMatrix sigma = rho.conjugated(haar_unitary(2, s));

  CHECK(advantage_upper_bound(ChargingConstraint::C0, input, rho, sigma) ==
        doctest::Approx(kPi / 2 * 2));
  input.m = 2;
  CHECK(advantage_upper_bound(ChargingConstraint::C0, input, rho, sigma) ==
        doctest::Approx(kPi / 2 * (4 + 2)));

  // C1/C2 use the Bures-angle ratio with fidelity multiplicativity.
  input.m = 1;
  double f = fidelity(rho, sigma);
  double ratio = std::acos(f) / std::acos(std::pow(f, 4));
  CHECK(advantage_upper_bound(ChargingConstraint::C1, input, rho, sigma) ==
        doctest::Approx(2.0 * ratio).epsilon(1e-9));
  CHECK(advantage_upper_bound(ChargingConstraint::C2, input, rho, sigma) ==
        doctest::Approx(4.0 * ratio).epsilon(1e-9));

  // Fidelity multiplicativity against dense tensor powers.
  for (int n = 2; n <= 4; ++n) {
    DensityMatrix rn(kron_pow(rho.matrix(), n));
    DensityMatrix sn(kron_pow(sigma.matrix(), n));
    CHECK(fidelity(rn, sn) == doctest::Approx(std::pow(f, n)).epsilon(1e-9));
  }

  // Theorem-2 consistency: k = N with pure orthogonal endpoints admits the
  // achievable advantage k, below the bound gamma N.
  input.k = 4;
  input.n_cells = 4;
  Vector e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  double bound = advantage_upper_bound(ChargingConstraint::C0, input, DensityMatrix::pure(e0),
                                       DensityMatrix::pure(e1));
  CHECK(bound == doctest::Approx(kPi / 2 * 4));
  CHECK(bound > 4.0);  // the achievable value k = N stays below gamma k
}

TEST_CASE("trotter overhead") {
  CHECK(trotter_overhead(2, 1) == 1);
  CHECK(trotter_overhead(2, 2) == 3);
  CHECK(trotter_overhead(3, 2) == 4);

  // Greedy layering of the appendix worst cases hits the formula exactly.
  CHECK(trotter_layers({{0, 1}}) == 1);
  CHECK(trotter_layers({{0, 1}, {1, 2}, {0, 2}}) == 3);
  CHECK(trotter_layers({{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}}) == 4);

  // Random families with participation <= m never need more layers.
  SampleStream s(96);
  for (int rep = 0; rep < 50; ++rep) {
    int k = 2 + static_cast<int>(s.uniform() * 3);  // 2..4
    int m = 1 + static_cast<int>(s.uniform() * 4);  // 1..4
    const int cells = 24;
    std::vector<int> load(cells, 0);
    std::vector<std::vector<int>> family;
    for (int attempt = 0; attempt < 40; ++attempt) {
      int capacity = 0;
      for (int cell = 0; cell < cells; ++cell)
        if (load[cell] < m) ++capacity;
      if (capacity < k) break;
      std::vector<int> set;
      while (static_cast<int>(set.size()) < k) {
        int cell = static_cast<int>(s.uniform() * cells);
        if (load[cell] >= m) continue;
        if (std::find(set.begin(), set.end(), cell) != set.end()) continue;
        set.push_back(cell);
      }
      for (int cell : set) ++load[cell];
      std::sort(set.begin(), set.end());
      family.push_back(set);
    }
    if (family.empty()) continue;
    CHECK(trotter_layers(family) <= trotter_overhead(k, m));
  }
}

TEST_CASE("trotter error decays as 1/L") {
  SampleStream s(97);
  std::vector<Matrix> terms;
  for (int j = 0; j < 3; ++j) terms.push_back(random_hamiltonian(4, s));
  double e8 = trotter_error(terms, 1.0, 8);
  double e16 = trotter_error(terms, 1.0, 16);
  double e32 = trotter_error(terms, 1.0, 32);
  CHECK(e16 <= 0.7 * e8);
  CHECK(e32 <= 0.7 * e16);
  CHECK(e16 / e8 == doctest::Approx(0.5).epsilon(0.25));
  CHECK(e32 / e16 == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("conjectured power ratio stays below one") {
  SampleStream stream(98);
  std::vector<double> ps;
  ConjectureResult result = conjecture_check(3, 2, 200, stream, &ps);
  CHECK(result.samples == 200);
  CHECK(result.max_p < 1.0);
  CHECK(result.violations == 0);
  CHECK(ps.size() == 200);

  // Single term: P reduces to ||Y|| / ||X|| computed directly.
  SampleStream s(99);
  Matrix h0 = Matrix::Zero(2, 2);
  h0(0, 0) = -1.0;
  h0(1, 1) = 1.0;
  Matrix iota = 0.5 * (embed_operator(h0, {0}, 2, 2) + embed_operator(h0, {1}, 2, 2));
  Matrix h = random_hamiltonian(4, s);
  double alpha = op_norm(h);
  Matrix x = h / alpha;
  Matrix y = 0.5 * (x * iota - iota * x);
  // Embedding into a 3-cell register cannot change operator norms.
  double direct = op_norm(y) / op_norm(x);
  double embedded = op_norm(embed_operator(y, {0, 1}, 3, 2)) /
                    op_norm(embed_operator(x, {0, 1}, 3, 2));
  CHECK(embedded == doctest::Approx(direct).epsilon(1e-10));
  CHECK(direct <= 1.0 + 1e-10);

  // Homogeneity: scaling every coefficient drops out of the ratio.
  Matrix h2 = random_hamiltonian(4, s);
  double a1 = op_norm(h), a2 = op_norm(h2);
  Matrix x2 = h2 / a2;
  Matrix y2 = 0.5 * (x2 * iota - iota * x2);
  auto ratio_for = [&](double c) {
    Matrix num = c * a1 * embed_operator(y, {0, 1}, 3, 2) + c * a2 * embed_operator(y2, {1, 2}, 3, 2);
    Matrix den = c * a1 * embed_operator(x, {0, 1}, 3, 2) + c * a2 * embed_operator(x2, {1, 2}, 3, 2);
    return op_norm(num) / op_norm(den);
  };
  CHECK(ratio_for(1.0) == doctest::Approx(ratio_for(7.5)).epsilon(1e-10));
}

TEST_CASE("constraint chain on piecewise orbits") {
  SampleStream s(100);
  for (int rep = 0; rep < 100; ++rep) {
    SampleStream sub = s.substream(rep);
    int d = 2 + rep % 3;
    DensityMatrix rho = bures_state(d, sub);
    std::vector<Matrix> hams;
    std::vector<double> durations;
    int segments = 1 + static_cast<int>(sub.uniform() * 3);
    for (int seg = 0; seg < segments; ++seg) {
      hams.push_back(random_hamiltonian(d, sub));
      durations.push_back(0.2 + sub.uniform());
    }
    Orbit orbit = piecewise_orbit(rho, hams, durations, 33);
    ConstraintAverages avg = constraint_averages(orbit);
    CHECK(avg.avg_deviation <= avg.avg_op_norm + 1e-9);
    CHECK(avg.avg_energy <= 2.0 * avg.avg_op_norm + 1e-9);
  }
}
