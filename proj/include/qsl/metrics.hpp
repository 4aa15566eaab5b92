#pragma once

#include "qsl/states.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Distinguishability measures. Theta and Phi are distances only between states
// of equal purity; the equal-purity precondition is enforced with kPurityTol.
// ---------------------------------------------------------------------------

/// arccos |<psi|phi>| for unit vectors.
double fubini_study(const Vector& psi, const Vector& phi);

/// Root fidelity F = tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Bures angle arccos F.
double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Generalized Bloch angle arccos((d tr[rho sigma] - 1)/(d tr[rho^2] - 1)).
double gba_theta(const DensityMatrix& rho, const DensityMatrix& sigma);

/// arccos sqrt(tr[rho sigma]/tr[rho^2]); reduces to fubini_study on pure states.
double phi_angle(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Euclidean distance between generalized Bloch vectors,
/// ||r - s||_2 = sqrt(d/(d-1)) ||rho - sigma||_HS.
double euclid_d(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Sub-fidelity sqrt(tr[rs] + sqrt(2(tr[rs]^2 - tr[rsrs]))), a lower bound on F.
double sub_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Affinity tr[sqrt(rho) sqrt(sigma)].
double affinity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// tr[rho sigma] / tr[rho^2].
double relative_purity(const DensityMatrix& rho, const DensityMatrix& sigma);

double overlap(const DensityMatrix& rho, const DensityMatrix& sigma);

/// arccos with the admissible roundoff overshoot clamped away.
double safe_arccos(double x);

}  // namespace qsl
