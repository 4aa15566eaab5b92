#pragma once

#include "qsl/dynamics.hpp"
#include "qsl/ensembles.hpp"
#include "qsl/metrics.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Speed-limit evaluators. Every bound is a distance over an orbit-averaged
// speed, evaluated on a shared Orbit object so different bounds compare along
// the identical evolution. Natural units, hbar = 1.
// ---------------------------------------------------------------------------

enum class BoundKind {
  MT,
  ML,
  UnifiedPure,
  TL,
  TTheta,
  TPhi,
  TUnified,
  TD,
  TSun,
  TDelCampo,
  TDeffner,
  TSunStar,
  TDeffnerStar,
};

const char* bound_name(BoundKind kind);

struct QslReport {
  BoundKind kind;
  double value = 0.0;     // bound on the evolution time
  double distance = 0.0;  // orbit-independent term
  double speed = 0.0;     // orbit-averaged speed term
  bool infinite = false;  // zero speed with nonzero distance (frozen orbit)
  bool endpoint_pure = false;
  bool deffner_valid = false;  // an endpoint is pure
  bool equal_purity = false;
  // The mean-energy denominator is only proven to bound the time between
  // orthogonal pure states; the arccos form can exceed the actual duration
  // for overlapping endpoints.
  bool ml_domain_orthogonal = false;
};

// Pure-state bounds; endpoints must sit on the orbit within 1e-6.
QslReport bound_mt_pure(const Vector& psi, const Vector& phi, const Orbit& orbit);
QslReport bound_ml_pure(const Vector& psi, const Vector& phi, const Orbit& orbit);
QslReport bound_unified_pure(const Vector& psi, const Vector& phi, const Orbit& orbit);

// Bures-angle bound over the averaged energy deviation; unitary orbits.
QslReport bound_tl(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit);

// Angle bounds on isospectral shells; unitary orbits, equal purity endpoints.
QslReport bound_theta(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit);
QslReport bound_phi(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit);
QslReport bound_unified_mixed(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const Orbit& orbit);

// Euclidean bound, valid for any generator.
QslReport bound_td(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit);

// Literature bounds for open evolution and their overlap-based enhancements.
QslReport bound_sun(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit);
QslReport bound_delcampo(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit);
QslReport bound_deffner(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit);
QslReport bound_sun_star(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit);
QslReport bound_deffner_star(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const Orbit& orbit);

/// Fraction of the (z = tr[rho sigma], beta = tr[rho sigma rho sigma]) region
/// where the Euclidean bound dominates the sub-fidelity-enhanced Deffner
/// bound, at purities x = tr[rho^2], y = tr[sigma^2]. 2-D midpoint quadrature
/// of the sign integrand at `resolution`^2 cells.
double deffner_region_probability(double x, double y, int resolution = 600);

// Analytic values for the lambda-mixed qubit pair at basis angle theta under
// the optimal off-diagonal coupling (k = 1 - 2 lambda).
double analytic_t_theta(double theta, double lambda);
double analytic_t_phi(double theta, double lambda);
double analytic_t_bures(double theta, double lambda);

struct TightnessRecord {
  double purity_rho = 0.0;
  double purity_sigma = 0.0;
  double t_l = 0.0;
  double t_theta = 0.0;
  double t_phi = 0.0;
  double tau = 0.0;
};

struct TightnessSummary {
  int d = 0;
  int samples = 0;
  int l_wins = 0;           // samples with T_L > max(T_Theta, T_Phi)
  double win_fraction = 0.0;
  double max_excess = 0.0;  // largest relative excess among the wins
};

/// Random-orbit comparison of the three unitary bounds: Bures-ensemble initial
/// state, Haar-log Hamiltonian, sigma the unit-time endpoint.
TightnessSummary tightness_sweep(int d, int samples, const SampleStream& stream,
                                 std::vector<TightnessRecord>* records = nullptr);

}  // namespace qsl
