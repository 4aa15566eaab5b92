#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qsl/dynamics.hpp"
#include "qsl/ensembles.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Ergotropy, passive states, charging power, and collective-advantage bounds
// for arrays of identical cells. Multi-copy work uses the diagonal product
// structure (sorted level sums) instead of dense tensor-power matrices.
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kLevelCapDefault = 1000000;  // total product levels

struct PassiveResult {
  DensityMatrix state;
  Matrix unitary;  // state = unitary * rho * unitary^dag
};

/// Passive state of rho under h0: eigenvalues of rho sorted non-increasing
/// against ascending energies. Ties in the spectrum keep their original order.
PassiveResult passive_state(const DensityMatrix& rho, const Matrix& h0);

/// Maximal unitarily extractable work tr[rho h0] - tr[passive h0].
double ergotropy(const DensityMatrix& rho, const Matrix& h0);

/// Maximal work per copy from N copies, using the spectra of rho and h0.
double wmax_per_copy(const DensityMatrix& rho, const Matrix& h0, int n_copies,
                     std::uint64_t level_cap = kLevelCapDefault);
double wmax_per_copy(const RealVector& spectrum, const RealVector& energies, int n_copies,
                     std::uint64_t level_cap = kLevelCapDefault);

/// Entropy-matched Gibbs ceiling for the extractable work per copy.
double wmax_gibbs_limit(const DensityMatrix& rho, const Matrix& h0);

/// First copy count in 1..n_max whose tensor power stops being passive, or 0
/// when passivity survives the whole range.
int completely_passive_fail(const DensityMatrix& sigma, const Matrix& h0, int n_max,
                            std::uint64_t level_cap = kLevelCapDefault);

struct HopStep {
  std::uint64_t from;
  std::uint64_t to;  // differs from `from` in exactly one cell index
};

/// Sequence of single-cell basis swaps whose composition sorts the diagonal
/// product state into its passive order. Each sorting transposition is
/// realized as a hop chain through intermediate basis states.
std::vector<HopStep> separable_extraction_schedule(const RealVector& spectrum,
                                                   const RealVector& energies, int n_copies,
                                                   std::uint64_t level_cap = kLevelCapDefault);

struct PowerSeries {
  std::vector<double> times;
  std::vector<double> work;   // deposited energy W(t) = tr[rho_t h0] - tr[rho_0 h0]
  std::vector<double> power;  // instantaneous P(t) = -i tr([H(t), rho_t] h0)
};

PowerSeries power_trace(const Orbit& orbit, const Matrix& h0);

struct LadderAdvantage {
  double tau_parallel;
  double tau_collective;
  double gamma;  // advantage, equals the cell count
};

/// Ground-to-top charging of n two-level cells under the operator-norm budget
/// ||H||_op = e_max shared between the parallel and collective drives.
LadderAdvantage advantage_ladder(int n, double e_max);

/// Direct simulation of both ladder drives; returns the worst endpoint
/// infidelity against the fully excited product state.
double advantage_ladder_infidelity(int n, double e_max);

/// Collective advantage of the product-coupling drive on thermal qubit cells:
/// sqrt(N) under the deviation constraint, N under the mean-energy constraint,
/// independent of beta.
std::pair<double, double> advantage_separable_ball(int n, double beta);

/// Simulation check of the separable-ball drive: endpoint distance between the
/// collectively driven state and the target tensor power.
double advantage_separable_ball_error(int n, double beta);

enum class ChargingConstraint { C0, C1, C2, OpNorm };

struct AdvantageBoundInput {
  int n_cells = 1;
  int k = 1;          // interaction order
  int m = 1;          // participation number
  double s_factor = 1.0;
  double gamma = 1.5707963267948966;  // pi/2, ground-to-excited case
};

/// Upper bound on the collective advantage for the given constraint. C0 uses
/// the circuit bound gamma*k (or gamma*(k^2 (m-1) + k) when m > 1); C1 and C2
/// use the Bures-angle ratio of the single-cell and N-copy problems.
double advantage_upper_bound(ChargingConstraint constraint, const AdvantageBoundInput& input,
                             const DensityMatrix& rho, const DensityMatrix& sigma);

/// Sequential-layer overhead of realizing a k-local, participation-m
/// Hamiltonian as a circuit: k (m - 1) + 1.
int trotter_overhead(int k, int m);

/// Layers assigned by greedy coloring of the overlap graph of the interaction
/// sets; never exceeds trotter_overhead(k, max participation).
int trotter_layers(const std::vector<std::vector<int>>& partitions);

/// Hilbert-Schmidt error of the L-step sequential-layer approximation of
/// exp(-i sum_j H_j tau).
double trotter_error(const std::vector<Matrix>& terms, double tau, int steps);

struct ConjectureResult {
  double max_p = 0.0;
  int samples = 0;
  int violations = 0;       // instances with P > 1
  double worst_violation = 0.0;
};

/// Samples Haar k-body charging layers on n qubit cells and evaluates the
/// operator-norm ratio P = ||sum a Y x 1|| / ||sum a X x 1||; the conjectured
/// power limit corresponds to P <= 1.
ConjectureResult conjecture_check(int n, int k, int samples, const SampleStream& stream,
                                  std::vector<double>* p_values = nullptr);

/// Time-averaged constraint quantities of a piecewise orbit: deviation,
/// energy above ground, operator norm.
struct ConstraintAverages {
  double avg_deviation;
  double avg_energy;
  double avg_op_norm;
};

ConstraintAverages constraint_averages(const Orbit& orbit);

}  // namespace qsl
