#include "qsl/batteries.hpp"

#include "qsl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t checked_level_count(int d, int n_copies, std::uint64_t cap, const char* who) {
  if (n_copies < 1) throw Error(ErrorCode::InvalidArgument, std::string(who) + ": need n >= 1");
  std::uint64_t total = 1;
  for (int i = 0; i < n_copies; ++i) {
    total *= static_cast<std::uint64_t>(d);
    if (total > cap)
      throw Error(ErrorCode::ResourceLimit, std::string(who) + ": product level cap exceeded");
  }
  return total;
}

// Product probabilities and level sums over the d^N basis, first cell most
// significant.
void product_levels(const RealVector& spectrum, const RealVector& energies, int n_copies,
                    std::uint64_t total, std::vector<double>& probs, std::vector<double>& sums) {
  const int d = static_cast<int>(spectrum.size());
  probs.assign(total, 1.0);
  sums.assign(total, 0.0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rem = idx;
    double p = 1.0, e = 0.0;
    for (int c = 0; c < n_copies; ++c) {
      std::uint64_t digit = rem % d;
      rem /= d;
      p *= spectrum(static_cast<Eigen::Index>(digit));
      e += energies(static_cast<Eigen::Index>(digit));
    }
    probs[idx] = p;
    sums[idx] = e;
  }
}

double passive_product_energy(const RealVector& spectrum, const RealVector& energies,
                              int n_copies, std::uint64_t cap, const char* who) {
  if (spectrum.size() != energies.size())
    throw Error(ErrorCode::DimensionMismatch, std::string(who) + ": sizes disagree");
  std::uint64_t total = checked_level_count(static_cast<int>(spectrum.size()), n_copies, cap, who);
  std::vector<double> probs, sums;
  product_levels(spectrum, energies, n_copies, total, probs, sums);
  std::sort(probs.begin(), probs.end(), std::greater<double>());
  std::sort(sums.begin(), sums.end());
  double e = 0.0;
  for (std::uint64_t i = 0; i < total; ++i) e += probs[i] * sums[i];
  return e;
}

}  // namespace

PassiveResult passive_state(const DensityMatrix& rho, const Matrix& h0) {
  require_hermitian(h0, "passive_state");
  if (h0.rows() != rho.dim())
    throw Error(ErrorCode::DimensionMismatch, "passive_state: dimension mismatch");
  EigSystem energy = eig_hermitian(h0);
  const int d = rho.dim();
  // rho's spectrum arrives ascending; occupy ascending energy levels with the
  // descending populations. Equal populations keep their ascending-index order.
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rho.spectrum()(a) > rho.spectrum()(b);
  });
  RealVector populations(d);
  Matrix v = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    populations(j) = rho.spectrum()(order[j]);
    v += energy.vectors.col(j) * rho.eigenvectors().col(order[j]).adjoint();
  }
  return {DensityMatrix::from_eigensystem(populations, energy.vectors), v};
}

double ergotropy(const DensityMatrix& rho, const Matrix& h0) {
  PassiveResult passive = passive_state(rho, h0);
  double before = (rho.matrix() * h0).trace().real();
  double after = (passive.state.matrix() * h0).trace().real();
  return before - after;
}

double wmax_per_copy(const RealVector& spectrum, const RealVector& energies, int n_copies,
                     std::uint64_t level_cap) {
  double single = spectrum.dot(energies);  // diagonal state in the energy basis
  double passive =
      passive_product_energy(spectrum, energies, n_copies, level_cap, "wmax_per_copy");
  return single - passive / n_copies;
}

double wmax_per_copy(const DensityMatrix& rho, const Matrix& h0, int n_copies,
                     std::uint64_t level_cap) {
  require_hermitian(h0, "wmax_per_copy");
  EigSystem energy = eig_hermitian(h0);
  double single = (rho.matrix() * h0).trace().real();
  double passive =
      passive_product_energy(rho.spectrum(), energy.values, n_copies, level_cap, "wmax_per_copy");
  return single - passive / n_copies;
}

double wmax_gibbs_limit(const DensityMatrix& rho, const Matrix& h0) {
  EigSystem energy = eig_hermitian(h0);
  double single = (rho.matrix() * h0).trace().real();
  double s = vn_entropy(rho);
  const double s_max = std::log(static_cast<double>(rho.dim()));
  if (s <= 1e-12) return single - energy.values(0);  // ground state floor
  if (s >= s_max - 1e-12)
    return single - (h0.trace().real() / rho.dim());  // maximally mixed floor
  auto [gibbs, beta] = gibbs_matching_entropy(h0, s);
  (void)beta;
  return single - (gibbs.matrix() * h0).trace().real();
}

int completely_passive_fail(const DensityMatrix& sigma, const Matrix& h0, int n_max,
                            std::uint64_t level_cap) {
  require_hermitian(h0, "completely_passive_fail");
  EigSystem energy = eig_hermitian(h0);
  // A state that fails to commute with h0 is not passive even for one copy.
  Matrix in_energy_basis = energy.vectors.adjoint() * sigma.matrix() * energy.vectors;
  Matrix off = in_energy_basis;
  off.diagonal().setZero();
  if (off.norm() > 1e-10) return 1;
  RealVector populations = in_energy_basis.diagonal().real();
  for (int n = 1; n <= n_max; ++n) {
    std::uint64_t total =
        checked_level_count(sigma.dim(), n, level_cap, "completely_passive_fail");
    std::vector<double> probs, sums;
    product_levels(populations, energy.values, n, total, probs, sums);
    std::vector<std::uint64_t> order(total);
    std::iota(order.begin(), order.end(), std::uint64_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::uint64_t a, std::uint64_t b) { return sums[a] < sums[b]; });
    // Passivity: populations non-increasing along strictly increasing energy;
    // equal-energy groups may hold their members in any order.
    double scale = std::max(std::abs(sums[order.front()]), std::abs(sums[order.back()]));
    double tie_tol = 1e-12 * std::max(1.0, scale);
    bool passive = true;
    double prev_group_min = std::numeric_limits<double>::infinity();
    std::uint64_t i = 0;
    while (i < total && passive) {
      double gmax = probs[order[i]], gmin = probs[order[i]];
      std::uint64_t j = i + 1;
      while (j < total && sums[order[j]] - sums[order[i]] <= tie_tol) {
        gmax = std::max(gmax, probs[order[j]]);
        gmin = std::min(gmin, probs[order[j]]);
        ++j;
      }
      if (gmax > prev_group_min + 1e-12) passive = false;
      prev_group_min = std::min(prev_group_min, gmin);
      i = j;
    }
    if (!passive) return n;
  }
  return 0;
}

std::vector<HopStep> separable_extraction_schedule(const RealVector& spectrum,
                                                   const RealVector& energies, int n_copies,
                                                   std::uint64_t level_cap) {
  if (spectrum.size() != energies.size())
    throw Error(ErrorCode::DimensionMismatch, "separable_extraction_schedule: sizes disagree");
  const int d = static_cast<int>(spectrum.size());
  std::uint64_t total =
      checked_level_count(d, n_copies, level_cap, "separable_extraction_schedule");
  std::vector<double> probs, sums;
  product_levels(spectrum, energies, n_copies, total, probs, sums);

  std::vector<std::uint64_t> by_energy(total), by_prob(total);
  std::iota(by_energy.begin(), by_energy.end(), std::uint64_t{0});
  by_prob = by_energy;
  std::stable_sort(by_energy.begin(), by_energy.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return sums[a] < sums[b]; });
  std::stable_sort(by_prob.begin(), by_prob.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return probs[a] > probs[b]; });

  // The state holding the rank-j population moves to the rank-j energy level.
  std::vector<std::uint64_t> target(total);
  for (std::uint64_t j = 0; j < total; ++j) target[by_prob[j]] = by_energy[j];

  // Cycle decomposition into transpositions, each realized through
  // single-cell hops.
  std::vector<HopStep> schedule;
  std::vector<std::uint64_t> current(total);
  std::iota(current.begin(), current.end(), std::uint64_t{0});  // current[slot] = occupant
  std::vector<std::uint64_t> where(total);
  std::iota(where.begin(), where.end(), std::uint64_t{0});

  std::vector<std::uint64_t> powers(n_copies, 1);
  for (int c = n_copies - 2; c >= 0; --c) powers[c] = powers[c + 1] * d;

  auto emit_transposition = [&](std::uint64_t a, std::uint64_t b) {
    if (a == b) return;
    // Hop chain from a to b, one cell digit at a time.
    std::vector<std::uint64_t> chain{a};
    std::uint64_t cursor = a;
    for (int c = 0; c < n_copies; ++c) {
      std::uint64_t da = (cursor / powers[c]) % d;
      std::uint64_t db = (b / powers[c]) % d;
      if (da != db) {
        cursor = cursor + (db - da) * powers[c];
        chain.push_back(cursor);
      }
    }
    const size_t m = chain.size() - 1;
    for (size_t i = 0; i < m; ++i) schedule.push_back({chain[i], chain[i + 1]});
    for (size_t i = m - 1; i-- > 0;) schedule.push_back({chain[i], chain[i + 1]});
  };

  // Cycle walk: for each slot, swap until the desired occupant sits there.
  // target maps occupant -> destination slot.
  std::vector<std::uint64_t> desired(total);
  for (std::uint64_t a = 0; a < total; ++a) desired[target[a]] = a;
  for (std::uint64_t slot = 0; slot < total; ++slot) {
    while (current[slot] != desired[slot]) {
      std::uint64_t want = desired[slot];
      std::uint64_t from = where[want];
      // Anchor the hop chain at the occupied source state so the opening hops
      // carry the population toward its destination, first cell first.
      emit_transposition(from, slot);
      std::swap(current[slot], current[from]);
      where[current[slot]] = slot;
      where[current[from]] = from;
    }
  }
  return schedule;
}

PowerSeries power_trace(const Orbit& orbit, const Matrix& h0) {
  if (!orbit.has_hamiltonian())
    throw Error(ErrorCode::InvalidArgument, "power_trace: Hamiltonian generator required");
  require_hermitian(h0, "power_trace");
  PowerSeries series;
  series.times = orbit.times;
  const double base = (orbit.initial().matrix() * h0).trace().real();
  for (int k = 0; k < orbit.nodes(); ++k) {
    const Matrix& rho = orbit.states[k].matrix();
    const Matrix& h = orbit.hamiltonian_at(k);
    series.work.push_back((rho * h0).trace().real() - base);
    Complex commutator_trace = ((h * rho - rho * h) * h0).trace();
    series.power.push_back((Complex(0.0, -1.0) * commutator_trace).real());
  }
  return series;
}

LadderAdvantage advantage_ladder(int n, double e_max) {
  if (n < 1 || !(e_max > 0.0))
    throw Error(ErrorCode::InvalidArgument, "advantage_ladder: need n >= 1 and e_max > 0");
  double tau_col = kPi / (2.0 * e_max);
  return {n * tau_col, tau_col, static_cast<double>(n)};
}

double advantage_ladder_infidelity(int n, double e_max) {
  if (n < 1 || n > 12)
    throw Error(ErrorCode::ResourceLimit, "advantage_ladder_infidelity: n outside 1..12");
  const std::uint64_t dim = std::uint64_t{1} << n;
  Matrix sx(2, 2);
  sx << 0, 1, 1, 0;
  Matrix h_par = Matrix::Zero(dim, dim);
  for (int l = 0; l < n; ++l) h_par += embed_operator(sx, {l}, n, 2);
  h_par *= e_max / n;
  Vector ground = Vector::Zero(dim), top = Vector::Zero(dim);
  ground(0) = 1.0;
  top(dim - 1) = 1.0;
  Matrix h_col = e_max * hermitize(top * ground.adjoint() + ground * top.adjoint());

  LadderAdvantage adv = advantage_ladder(n, e_max);
  Vector par_end = exp_hermitian(h_par, adv.tau_parallel) * ground;
  Vector col_end = exp_hermitian(h_col, adv.tau_collective) * ground;
  double worst = 0.0;
  worst = std::max(worst, 1.0 - std::norm(top.dot(par_end)));
  worst = std::max(worst, 1.0 - std::norm(top.dot(col_end)));
  return worst;
}

std::pair<double, double> advantage_separable_ball(int n, double beta) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "advantage_separable_ball: need n >= 1");
  (void)beta;  // the advantage does not depend on how mixed the cells are
  return {std::sqrt(static_cast<double>(n)), static_cast<double>(n)};
}

double advantage_separable_ball_error(int n, double beta) {
  if (n < 1 || n > 10)
    throw Error(ErrorCode::ResourceLimit, "advantage_separable_ball_error: n outside 1..10");
  Matrix h0 = Matrix::Zero(2, 2);
  h0(1, 1) = 1.0;
  DensityMatrix cell = gibbs_state(h0, beta);
  DensityMatrix target_cell = gibbs_state(h0, -beta);
  Matrix sx(2, 2);
  sx << 0, 1, 1, 0;
  Matrix joint = kron_pow(cell.matrix(), n);
  Matrix coupling = kron_pow(sx, n);
  Matrix u = exp_hermitian(hermitize(coupling), kPi / 2.0);
  Matrix evolved = u * joint * u.adjoint();
  return (evolved - kron_pow(target_cell.matrix(), n)).norm();
}

double advantage_upper_bound(ChargingConstraint constraint, const AdvantageBoundInput& input,
                             const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (input.n_cells < 1 || input.k < 1 || input.k > input.n_cells || input.m < 1 ||
      input.m > std::max(input.n_cells - 1, 1))
    throw Error(ErrorCode::InvalidArgument, "advantage_upper_bound: bad cell/order counts");
  switch (constraint) {
    case ChargingConstraint::C0:
      return input.m == 1
                 ? input.gamma * input.k
                 : input.gamma * (static_cast<double>(input.k) * input.k * (input.m - 1) + input.k);
    case ChargingConstraint::C1:
    case ChargingConstraint::C2: {
      double f = fidelity(rho, sigma);
      double single = safe_arccos(f);
      double many = safe_arccos(std::pow(f, input.n_cells));  // F(x^N, y^N) = F(x, y)^N
      if (many <= 1e-12)
        throw Error(ErrorCode::UndefinedAngle, "advantage_upper_bound: coinciding endpoints");
      double scale = constraint == ChargingConstraint::C1
                         ? std::sqrt(static_cast<double>(input.n_cells))
                         : static_cast<double>(input.n_cells);
      return input.s_factor * scale * single / many;
    }
    case ChargingConstraint::OpNorm:
      // Uniform operator-norm budget: the ladder drive attains the extensive
      // advantage exactly.
      return input.s_factor * input.n_cells;
  }
  throw Error(ErrorCode::InvalidArgument, "advantage_upper_bound: unknown constraint");
}

int trotter_overhead(int k, int m) {
  if (k < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "trotter_overhead: k, m >= 1");
  return k * (m - 1) + 1;
}

int trotter_layers(const std::vector<std::vector<int>>& partitions) {
  std::vector<int> layer(partitions.size(), -1);
  int layers = 0;
  for (size_t i = 0; i < partitions.size(); ++i) {
    std::vector<bool> used(partitions.size() + 1, false);
    for (size_t j = 0; j < i; ++j) {
      bool overlap = false;
      for (int a : partitions[i]) {
        for (int b : partitions[j])
          if (a == b) {
            overlap = true;
            break;
          }
        if (overlap) break;
      }
      if (overlap && layer[j] >= 0) used[layer[j]] = true;
    }
    int pick = 0;
    while (used[pick]) ++pick;
    layer[i] = pick;
    layers = std::max(layers, pick + 1);
  }
  return layers;
}

double trotter_error(const std::vector<Matrix>& terms, double tau, int steps) {
  if (terms.empty() || steps < 1)
    throw Error(ErrorCode::InvalidArgument, "trotter_error: need terms and steps");
  Matrix total = Matrix::Zero(terms[0].rows(), terms[0].cols());
  for (const Matrix& t : terms) total += t;
  Matrix exact = exp_hermitian(hermitize(total), tau);
  Matrix step = Matrix::Identity(total.rows(), total.cols());
  for (const Matrix& t : terms) step = exp_hermitian(hermitize(t), tau / steps) * step;
  Matrix trot = Matrix::Identity(total.rows(), total.cols());
  for (int l = 0; l < steps; ++l) trot = step * trot;
  return (trot - exact).norm();
}

ConjectureResult conjecture_check(int n, int k, int samples, const SampleStream& stream,
                                  std::vector<double>* p_values) {
  if (n < 2 || k < 2 || k > n)
    throw Error(ErrorCode::InvalidArgument, "conjecture_check: need 2 <= k <= n");
  if (n > 6) throw Error(ErrorCode::ResourceLimit, "conjecture_check: n above the 2^6 cap");

  // All k-subsets of the n qubit cells.
  std::vector<std::vector<int>> subsets;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    subsets.push_back(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  // Single-cell internal Hamiltonian with omega_d - omega_1 = 2 omega_d.
  Matrix h0 = Matrix::Zero(2, 2);
  h0(0, 0) = -1.0;
  h0(1, 1) = 1.0;
  const int sub_dim = 1 << k;
  // iota operator on the k-cell subsystem: normalized sum of the cell terms.
  Matrix iota = Matrix::Zero(sub_dim, sub_dim);
  for (int j = 0; j < k; ++j) iota += embed_operator(h0, {j}, k, 2);
  iota /= static_cast<double>(k);  // lambda_d = 1

  ConjectureResult result;
  result.samples = samples;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (int i = 0; i < samples; ++i) {
    SampleStream s = stream.substream(i);
    Matrix num = Matrix::Zero(dim, dim);
    Matrix den = Matrix::Zero(dim, dim);
    for (const auto& mu : subsets) {
      Matrix h = random_hamiltonian(sub_dim, s);
      double alpha = op_norm(h);
      if (alpha < 1e-12) continue;
      Matrix x = h / alpha;
      Matrix y = 0.5 * (x * iota - iota * x);
      num += alpha * embed_operator(y, mu, n, 2);
      den += alpha * embed_operator(x, mu, n, 2);
    }
    double p = op_norm(num) / op_norm(den);
    if (p_values) p_values->push_back(p);
    result.max_p = std::max(result.max_p, p);
    if (p > 1.0) {
      ++result.violations;
      result.worst_violation = std::max(result.worst_violation, p);
    }
  }
  return result;
}

ConstraintAverages constraint_averages(const Orbit& orbit) {
  return {avg_std_energy(orbit), avg_energy_above_ground(orbit), avg_op_norm(orbit)};
}

}  // namespace qsl
