#pragma once

#include <optional>
#include <vector>

#include "qsl/dynamics.hpp"
#include "qsl/ensembles.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Iterative search for efficient time-independent Hamiltonians between
// isospectral states. Every candidate gate maps rho to sigma exactly; the
// iteration only removes the component of the generator that commutes with
// the initial (or final) state until it falls below the threshold.
// ---------------------------------------------------------------------------

enum class BrachVariant { Forward, Backward, TwoSided };

/// Connecting gate O(phases) = sum_k exp(i phi_k) |s_k><r_k| built from the
/// ascending eigenbases of rho and sigma. Degenerate eigenvalue blocks default
/// to identity block unitaries; `blocks` may supply one unitary per degenerate
/// block (in ascending-eigenvalue order) to override them.
Matrix connect_unitary(const DensityMatrix& rho, const DensityMatrix& sigma,
                       const RealVector& phases, const std::vector<Matrix>& blocks = {});

/// Projection of h onto the maximal subalgebra commuting with rho. Eigenvalues
/// count as equal when |l_i - l_j| <= kDegenTol * max(1, |l_i|).
Matrix mask(const Matrix& h, const DensityMatrix& rho);

struct BrachIterate {
  double h_par_norm = 0.0;  // ||mask(H)||_HS
  double h_norm = 0.0;      // ||H||_HS
  double eta_star = 0.0;
  double tau_action = 0.0;  // Delta E(H, rho): duration in action units for the unit gate
  RealVector phases;        // geometric phases of the gate
};

struct BrachRun {
  BrachVariant variant = BrachVariant::Forward;
  double epsilon = 0.0;
  int max_iterations = 0;
  std::vector<BrachIterate> history;  // entry 0 is the initialization
  Matrix final_hamiltonian;
  Matrix final_gate;
  int iterations = 0;  // mask-removal steps performed
  bool converged = false;
  double endpoint_error = 0.0;  // max_j || exp(-iH_j) rho exp(iH_j) - sigma ||
  double ratio_to_qsl = 0.0;    // gate time over the unified bound on its own orbit
  double eta = 0.0;             // Delta E / op-norm of the final Hamiltonian
  double eta_star = 0.0;
};

struct BrachOptions {
  int max_iterations = 1000;
  bool track_endpoint_error = true;
  int qsl_grid = 2;  // nodes for the bound evaluation (integrands are constant)
};

inline constexpr double kPureEpsilonDefault = 1e-4;
inline constexpr double kMixedEpsilonDefault = 1e-2;

BrachRun solve(const DensityMatrix& rho, const DensityMatrix& sigma, const RealVector& phases0,
               double epsilon, BrachVariant variant = BrachVariant::Forward,
               const BrachOptions& options = {});

/// Uzdin efficiency Delta E(H, rho) / ||H||_op.
double efficiency_eta(const Matrix& h, const DensityMatrix& rho);

/// Density-operator efficiency, saturated when the commuting component of H
/// vanishes.
double efficiency_eta_star(const Matrix& h, const DensityMatrix& rho);

/// Duration of the unit gate exp(-iH) in action units (Delta E), or rescaled
/// to physical time Delta E / omega when a deviation constraint omega is given.
double evolution_time(const Matrix& h, const DensityMatrix& rho, double omega = 0.0);

enum class PerturbKind { Convex, Unitary };

/// Relative deviation of the converged Hamiltonian when the problem is
/// perturbed with strength delta.
double perturbation_study(const DensityMatrix& rho, const DensityMatrix& sigma, double delta,
                          PerturbKind kind, SampleStream& s, double epsilon,
                          const RealVector& phases0, const BrachOptions& options = {});

struct MultiStartResult {
  std::optional<BrachRun> best;         // converged run with the fewest iterations
  std::vector<int> iteration_counts;    // per run; max_iterations + 1 when unconverged
  int converged_runs = 0;
};

MultiStartResult multi_start(const DensityMatrix& rho, const DensityMatrix& sigma, int L,
                             double epsilon, SampleStream& s, const BrachOptions& options = {});

/// Geometric phases of a connecting gate relative to the eigenbases of the
/// endpoint pair, phi_k = arg <s_k|O|r_k>.
RealVector gate_phases(const Matrix& gate, const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qsl
