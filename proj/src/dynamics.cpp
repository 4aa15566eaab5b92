#include "qsl/dynamics.hpp"

#include <cmath>

namespace qsl {

namespace {

void require_grid(double tau, int m, const char* who) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidArgument, std::string(who) + ": tau must be > 0");
  if (m < 2) throw Error(ErrorCode::InvalidArgument, std::string(who) + ": grid needs >= 2 nodes");
}

std::vector<double> uniform_grid(double tau, int m) {
  std::vector<double> t(m);
  for (int k = 0; k < m; ++k) t[k] = tau * k / (m - 1);
  t.back() = tau;
  return t;
}

double commutator_norm(const Matrix& h, const Matrix& rho) {
  return (h * rho - rho * h).norm();
}

}  // namespace

const Matrix& Orbit::hamiltonian_at(int node) const {
  if (kind == GeneratorKind::TimeIndependent) return hams[0];
  if (kind != GeneratorKind::Piecewise)
    throw Error(ErrorCode::InvalidArgument, "orbit has no Hamiltonian generator");
  double t = times[node];
  for (size_t i = 0; i < seg_ends.size(); ++i)
    if (t <= seg_ends[i] + 1e-12 * std::max(1.0, seg_ends.back())) return hams[i];
  return hams.back();
}

Orbit unitary_orbit(const DensityMatrix& rho0, const Matrix& h, double tau, int m) {
  require_grid(tau, m, "unitary_orbit");
  require_hermitian(h, "unitary_orbit");
  if (h.rows() != rho0.dim())
    throw Error(ErrorCode::DimensionMismatch, "unitary_orbit: dimension mismatch");
  EigSystem es = eig_hermitian(h);
  Orbit orbit;
  orbit.kind = GeneratorKind::TimeIndependent;
  orbit.hams = {hermitize(h)};
  orbit.times = uniform_grid(tau, m);
  orbit.states.reserve(m);
  for (double t : orbit.times) {
    Vector diag(es.values.size());
    for (Eigen::Index k = 0; k < es.values.size(); ++k)
      diag(k) = std::exp(Complex(0.0, -es.values(k) * t));
    Matrix u = es.vectors * diag.asDiagonal() * es.vectors.adjoint();
    orbit.states.push_back(DensityMatrix(hermitize(u * rho0.matrix() * u.adjoint())));
  }
  return orbit;
}

Orbit piecewise_orbit(const DensityMatrix& rho0, const std::vector<Matrix>& hams,
                      const std::vector<double>& durations, int m) {
  if (hams.empty() || hams.size() != durations.size())
    throw Error(ErrorCode::InvalidArgument, "piecewise_orbit: need one duration per segment");
  double tau = 0.0;
  for (double dt : durations) {
    if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "piecewise_orbit: bad duration");
    tau += dt;
  }
  require_grid(tau, m, "piecewise_orbit");
  Orbit orbit;
  orbit.kind = GeneratorKind::Piecewise;
  orbit.times = uniform_grid(tau, m);
  double end = 0.0;
  for (size_t i = 0; i < hams.size(); ++i) {
    require_hermitian(hams[i], "piecewise_orbit");
    if (hams[i].rows() != rho0.dim())
      throw Error(ErrorCode::DimensionMismatch, "piecewise_orbit: dimension mismatch");
    orbit.hams.push_back(hermitize(hams[i]));
    end += durations[i];
    orbit.seg_ends.push_back(end);
  }
  orbit.states.reserve(m);
  for (double t : orbit.times) {
    // Propagator up to t: full segments then the partial one.
    Matrix u = Matrix::Identity(rho0.dim(), rho0.dim());
    double start = 0.0;
    for (size_t i = 0; i < orbit.hams.size() && start < t - 1e-15; ++i) {
      double seg_len = std::min(t, orbit.seg_ends[i]) - start;
      if (seg_len > 0.0) u = exp_hermitian(orbit.hams[i], seg_len) * u;
      start = orbit.seg_ends[i];
    }
    orbit.states.push_back(DensityMatrix(hermitize(u * rho0.matrix() * u.adjoint())));
  }
  return orbit;
}

Orbit dephasing_orbit(const DensityMatrix& rho0, double gamma, double tau, int m) {
  require_grid(tau, m, "dephasing_orbit");
  if (rho0.dim() != 2)
    throw Error(ErrorCode::InvalidArgument, "dephasing_orbit: single qubit only");
  if (gamma < 0.0) throw Error(ErrorCode::InvalidArgument, "dephasing_orbit: gamma must be >= 0");
  Orbit orbit;
  orbit.kind = GeneratorKind::Dephasing;
  orbit.gamma = gamma;
  orbit.times = uniform_grid(tau, m);
  orbit.states.reserve(m);
  for (double t : orbit.times) {
    Matrix r = rho0.matrix();
    double decay = std::exp(-2.0 * gamma * t);
    r(0, 1) *= decay;
    r(1, 0) *= decay;
    orbit.states.push_back(DensityMatrix(r));
  }
  return orbit;
}

Orbit depolarizing_orbit(const DensityMatrix& rho0, const std::function<double(double)>& schedule,
                         double tau, int m) {
  require_grid(tau, m, "depolarizing_orbit");
  Orbit orbit;
  orbit.kind = GeneratorKind::Depolarizing;
  orbit.times = uniform_grid(tau, m);
  orbit.eps.reserve(m);
  for (double t : orbit.times) orbit.eps.push_back(schedule(t));
  if (std::abs(orbit.eps.front() - 1.0) > 1e-10)
    throw Error(ErrorCode::InvalidArgument, "depolarizing_orbit: schedule must start at 1");
  for (int k = 1; k < m; ++k)
    if (orbit.eps[k] > orbit.eps[k - 1] + 1e-12)
      throw Error(ErrorCode::InvalidArgument, "depolarizing_orbit: schedule must be monotone");
  for (int k = 0; k < m; ++k) {
    double e = orbit.eps[k];
    if (e < 0.0 || e > 1.0)
      throw Error(ErrorCode::InvalidArgument, "depolarizing_orbit: schedule outside [0, 1]");
    orbit.states.push_back(depolarize(rho0, e));
  }
  return orbit;
}

Orbit dilated_orbit(const DensityMatrix& rho0, const DensityMatrix& env, const Matrix& h_joint,
                    double tau, int m) {
  require_grid(tau, m, "dilated_orbit");
  require_hermitian(h_joint, "dilated_orbit");
  const int ds = rho0.dim(), de = env.dim();
  if (h_joint.rows() != static_cast<Eigen::Index>(ds) * de)
    throw Error(ErrorCode::DimensionMismatch, "dilated_orbit: joint dimension mismatch");
  Matrix joint0 = kron(rho0.matrix(), env.matrix());
  EigSystem es = eig_hermitian(h_joint);
  Orbit orbit;
  orbit.kind = GeneratorKind::Dilated;
  orbit.joint_hamiltonian = hermitize(h_joint);
  orbit.env_dim = de;
  orbit.times = uniform_grid(tau, m);
  orbit.states.reserve(m);
  for (double t : orbit.times) {
    Vector diag(es.values.size());
    for (Eigen::Index k = 0; k < es.values.size(); ++k)
      diag(k) = std::exp(Complex(0.0, -es.values(k) * t));
    Matrix u = es.vectors * diag.asDiagonal() * es.vectors.adjoint();
    Matrix joint = u * joint0 * u.adjoint();
    orbit.states.push_back(DensityMatrix(hermitize(partial_trace(joint, {ds, de}, {0}))));
  }
  return orbit;
}

double trapezoid_average(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size() || times.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "trapezoid_average: bad sample set");
  double acc = 0.0;
  for (size_t k = 0; k + 1 < times.size(); ++k)
    acc += 0.5 * (values[k] + values[k + 1]) * (times[k + 1] - times[k]);
  return acc / (times.back() - times.front());
}

double instantaneous_speed(const Orbit& orbit, int node) {
  const DensityMatrix& rho = orbit.states[node];
  switch (orbit.kind) {
    case GeneratorKind::TimeIndependent:
    case GeneratorKind::Piecewise:
      return commutator_norm(orbit.hamiltonian_at(node), rho.matrix());
    case GeneratorKind::Dephasing: {
      // ||d rho/dt|| = sqrt(2) gamma sqrt(r1^2 + r2^2) = 2 sqrt(2) gamma |rho_01|
      double off = std::abs(rho.matrix()(0, 1));
      return 2.0 * std::sqrt(2.0) * orbit.gamma * off;
    }
    case GeneratorKind::Depolarizing:
    case GeneratorKind::Dilated: {
      // No closed form kept at the node; use the neighbors.
      int m = orbit.nodes();
      int lo = std::max(node - 1, 0), hi = std::min(node + 1, m - 1);
      double dt = orbit.times[hi] - orbit.times[lo];
      return (orbit.states[hi].matrix() - orbit.states[lo].matrix()).norm() / dt;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "instantaneous_speed: unknown generator");
}

double avg_speed_hs(const Orbit& orbit) {
  const int m = orbit.nodes();
  switch (orbit.kind) {
    case GeneratorKind::TimeIndependent:
    case GeneratorKind::Piecewise:
    case GeneratorKind::Dephasing: {
      std::vector<double> v(m);
      for (int k = 0; k < m; ++k) v[k] = instantaneous_speed(orbit, k);
      return trapezoid_average(orbit.times, v);
    }
    case GeneratorKind::Depolarizing: {
      // integral |d eps/dt| dt telescopes for monotone schedules, so the
      // average is exact rather than a quadrature estimate.
      double variation = 0.0;
      for (int k = 0; k + 1 < m; ++k) variation += std::abs(orbit.eps[k + 1] - orbit.eps[k]);
      const int d = orbit.initial().dim();
      Matrix centered =
          orbit.initial().matrix() - Matrix::Identity(d, d) / static_cast<double>(d);
      return variation * centered.norm() / orbit.duration();
    }
    case GeneratorKind::Dilated:
      return avg_speed_hs_fd(orbit);
  }
  throw Error(ErrorCode::InvalidArgument, "avg_speed_hs: unknown generator");
}

double avg_speed_hs_fd(const Orbit& orbit) {
  const int m = orbit.nodes();
  std::vector<double> v(m);
  for (int k = 0; k < m; ++k) {
    int lo = std::max(k - 1, 0), hi = std::min(k + 1, m - 1);
    double dt = orbit.times[hi] - orbit.times[lo];
    // tr[(rho_hi - rho_lo)^2] through overlaps, the form measurable by swap tests.
    double p_hi = orbit.states[hi].purity();
    double p_lo = orbit.states[lo].purity();
    double cross = (orbit.states[hi].matrix() * orbit.states[lo].matrix()).trace().real();
    v[k] = std::sqrt(std::max(p_hi + p_lo - 2.0 * cross, 0.0)) / dt;
  }
  return trapezoid_average(orbit.times, v);
}

double q_theta(const Orbit& orbit) {
  if (!orbit.has_hamiltonian())
    throw Error(ErrorCode::InvalidArgument, "q_theta: unitary generator required");
  const int d = orbit.initial().dim();
  std::vector<double> v(orbit.nodes());
  for (int k = 0; k < orbit.nodes(); ++k) {
    double denom = orbit.states[k].purity() - 1.0 / d;
    if (denom < 1e-12)
      throw Error(ErrorCode::UndefinedAngle, "q_theta: undefined at the maximally mixed state");
    v[k] = commutator_norm(orbit.hamiltonian_at(k), orbit.states[k].matrix()) / std::sqrt(denom);
  }
  return trapezoid_average(orbit.times, v);
}

double q_phi(const Orbit& orbit) {
  if (!orbit.has_hamiltonian())
    throw Error(ErrorCode::InvalidArgument, "q_phi: unitary generator required");
  std::vector<double> v(orbit.nodes());
  for (int k = 0; k < orbit.nodes(); ++k) {
    double denom = 2.0 * orbit.states[k].purity();
    v[k] = commutator_norm(orbit.hamiltonian_at(k), orbit.states[k].matrix()) / std::sqrt(denom);
  }
  return trapezoid_average(orbit.times, v);
}

double avg_std_energy(const Orbit& orbit) {
  if (!orbit.has_hamiltonian())
    throw Error(ErrorCode::InvalidArgument, "avg_std_energy: Hamiltonian generator required");
  std::vector<double> v(orbit.nodes());
  for (int k = 0; k < orbit.nodes(); ++k) {
    const Matrix& h = orbit.hamiltonian_at(k);
    const Matrix& rho = orbit.states[k].matrix();
    double e2 = (rho * h * h).trace().real();
    double e1 = (rho * h).trace().real();
    v[k] = std::sqrt(std::max(e2 - e1 * e1, 0.0));
  }
  return trapezoid_average(orbit.times, v);
}

double avg_energy_above_ground(const Orbit& orbit) {
  if (!orbit.has_hamiltonian())
    throw Error(ErrorCode::InvalidArgument, "avg_energy_above_ground: Hamiltonian generator required");
  // Ground level per distinct segment Hamiltonian.
  std::vector<double> ground(orbit.hams.size());
  for (size_t i = 0; i < orbit.hams.size(); ++i) ground[i] = eig_hermitian(orbit.hams[i]).values(0);
  std::vector<double> v(orbit.nodes());
  for (int k = 0; k < orbit.nodes(); ++k) {
    const Matrix& h = orbit.hamiltonian_at(k);
    size_t seg = 0;
    while (&orbit.hams[seg] != &h) ++seg;
    v[k] = (orbit.states[k].matrix() * h).trace().real() - ground[seg];
  }
  return trapezoid_average(orbit.times, v);
}

double avg_op_norm(const Orbit& orbit) {
  if (!orbit.has_hamiltonian())
    throw Error(ErrorCode::InvalidArgument, "avg_op_norm: Hamiltonian generator required");
  std::vector<double> norm_by_seg(orbit.hams.size());
  for (size_t i = 0; i < orbit.hams.size(); ++i) norm_by_seg[i] = op_norm(orbit.hams[i]);
  std::vector<double> v(orbit.nodes());
  for (int k = 0; k < orbit.nodes(); ++k) {
    const Matrix& h = orbit.hamiltonian_at(k);
    size_t seg = 0;
    while (&orbit.hams[seg] != &h) ++seg;
    v[k] = norm_by_seg[seg];
  }
  return trapezoid_average(orbit.times, v);
}

}  // namespace qsl
