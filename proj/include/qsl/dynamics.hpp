#pragma once

#include <functional>
#include <vector>

#include "qsl/states.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Time-sampled trajectories and the time-averaged functionals the speed-limit
// bounds consume. Time averages use the composite trapezoid rule on the orbit
// grid; generators with a closed-form instantaneous speed evaluate it at the
// nodes instead of differencing states.
// ---------------------------------------------------------------------------

enum class GeneratorKind { TimeIndependent, Piecewise, Dephasing, Depolarizing, Dilated };

inline constexpr int kDefaultGrid = 257;

struct Orbit {
  GeneratorKind kind = GeneratorKind::TimeIndependent;
  std::vector<double> times;         // ascending, times.front() == 0
  std::vector<DensityMatrix> states; // one per node

  // Generator payload, by kind.
  std::vector<Matrix> hams;          // TimeIndependent: 1 entry; Piecewise: per segment
  std::vector<double> seg_ends;      // Piecewise: segment end times, ascending
  double gamma = 0.0;                // Dephasing rate
  std::vector<double> eps;           // Depolarizing: schedule sampled at the nodes
  Matrix joint_hamiltonian;          // Dilated: system x environment Hamiltonian
  int env_dim = 0;                   // Dilated

  double duration() const { return times.back(); }
  int nodes() const { return static_cast<int>(times.size()); }
  const DensityMatrix& initial() const { return states.front(); }
  const DensityMatrix& final_state() const { return states.back(); }
  bool has_hamiltonian() const {
    return kind == GeneratorKind::TimeIndependent || kind == GeneratorKind::Piecewise;
  }
  const Matrix& hamiltonian_at(int node) const;
};

Orbit unitary_orbit(const DensityMatrix& rho0, const Matrix& h, double tau, int m = kDefaultGrid);

/// Piecewise-constant Hamiltonians; `durations` holds one positive length per segment.
Orbit piecewise_orbit(const DensityMatrix& rho0, const std::vector<Matrix>& hams,
                      const std::vector<double>& durations, int m = kDefaultGrid);

/// Single-qubit pure dephasing at rate gamma: off-diagonal Bloch components
/// decay as exp(-2 gamma t).
Orbit dephasing_orbit(const DensityMatrix& rho0, double gamma, double tau, int m = kDefaultGrid);

/// Purely depolarizing dynamics rho_t = eps(t) rho0 + (1 - eps(t)) I/d with
/// eps(0) = 1 and eps monotone on [0, tau].
Orbit depolarizing_orbit(const DensityMatrix& rho0, const std::function<double(double)>& schedule,
                         double tau, int m = kDefaultGrid);

/// System-reduced orbit of a joint unitary evolution from rho0 x env.
Orbit dilated_orbit(const DensityMatrix& rho0, const DensityMatrix& env, const Matrix& h_joint,
                    double tau, int m = kDefaultGrid);

/// Time-averaged Hilbert-Schmidt speed of the orbit.
double avg_speed_hs(const Orbit& orbit);

/// Same average through the symmetric finite-time increment of the overlaps;
/// kept as an independent route for cross-checks.
double avg_speed_hs_fd(const Orbit& orbit);

/// Time averages of the angle-bound speeds. Unitary generators only.
double q_theta(const Orbit& orbit);
double q_phi(const Orbit& orbit);

/// Time-averaged standard deviation of the driving Hamiltonian.
double avg_std_energy(const Orbit& orbit);

/// Time-averaged energy measured from the instantaneous ground level.
double avg_energy_above_ground(const Orbit& orbit);

/// Time-averaged operator norm of the driving Hamiltonian.
double avg_op_norm(const Orbit& orbit);

/// Instantaneous HS speed ||d rho/dt|| at a node, from the generator.
double instantaneous_speed(const Orbit& orbit, int node);

/// Trapezoid average of nodewise samples over the orbit grid.
double trapezoid_average(const std::vector<double>& times, const std::vector<double>& values);

}  // namespace qsl
