#include "qsl/bounds.hpp"

#include <cmath>

namespace qsl {

namespace {

QslReport ratio_report(BoundKind kind, double distance, double speed) {
  QslReport r;
  r.kind = kind;
  r.distance = distance;
  r.speed = speed;
  if (speed > 0.0) {
    r.value = distance / speed;
  } else if (distance <= 1e-12) {
    r.value = 0.0;
  } else {
    r.value = std::numeric_limits<double>::infinity();
    r.infinite = true;
  }
  return r;
}

void require_endpoint(const DensityMatrix& state, const DensityMatrix& node, const char* who) {
  if ((state.matrix() - node.matrix()).norm() > 1e-6)
    throw Error(ErrorCode::InvalidArgument, std::string(who) + ": endpoint is not on the orbit");
}

void require_unitary_orbit(const Orbit& orbit, const char* who) {
  if (!orbit.has_hamiltonian())
    throw Error(ErrorCode::InvalidArgument, std::string(who) + ": unitary orbit required");
}

QslReport pure_bound(BoundKind kind, const Vector& psi, const Vector& phi, const Orbit& orbit) {
  DensityMatrix start = DensityMatrix::pure(psi);
  DensityMatrix target = DensityMatrix::pure(phi);
  require_endpoint(start, orbit.initial(), "pure bound");
  require_endpoint(target, orbit.final_state(), "pure bound");
  double dist = fubini_study(psi / psi.norm(), phi / phi.norm());
  double speed = 0.0;
  switch (kind) {
    case BoundKind::MT:
      speed = avg_std_energy(orbit);
      break;
    case BoundKind::ML:
      speed = avg_energy_above_ground(orbit);
      break;
    case BoundKind::UnifiedPure:
      speed = std::min(avg_std_energy(orbit), avg_energy_above_ground(orbit));
      break;
    default:
      throw Error(ErrorCode::InvalidArgument, "pure_bound: wrong kind");
  }
  QslReport r = ratio_report(kind, dist, speed);
  r.endpoint_pure = true;
  r.deffner_valid = true;
  r.equal_purity = true;
  r.ml_domain_orthogonal = std::abs(psi.normalized().dot(phi.normalized())) <= 1e-8;
  return r;
}

}  // namespace

const char* bound_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::MT: return "t_mt";
    case BoundKind::ML: return "t_ml";
    case BoundKind::UnifiedPure: return "t_unified_pure";
    case BoundKind::TL: return "t_l";
    case BoundKind::TTheta: return "t_theta";
    case BoundKind::TPhi: return "t_phi";
    case BoundKind::TUnified: return "t_unified";
    case BoundKind::TD: return "t_d";
    case BoundKind::TSun: return "t_sun";
    case BoundKind::TDelCampo: return "t_delcampo";
    case BoundKind::TDeffner: return "t_deffner";
    case BoundKind::TSunStar: return "t_sun_star";
    case BoundKind::TDeffnerStar: return "t_deffner_star";
  }
  return "unknown";
}

QslReport bound_mt_pure(const Vector& psi, const Vector& phi, const Orbit& orbit) {
  return pure_bound(BoundKind::MT, psi, phi, orbit);
}

QslReport bound_ml_pure(const Vector& psi, const Vector& phi, const Orbit& orbit) {
  return pure_bound(BoundKind::ML, psi, phi, orbit);
}

QslReport bound_unified_pure(const Vector& psi, const Vector& phi, const Orbit& orbit) {
  return pure_bound(BoundKind::UnifiedPure, psi, phi, orbit);
}

QslReport bound_tl(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit) {
  require_unitary_orbit(orbit, "bound_tl");
  QslReport r = ratio_report(BoundKind::TL, bures_angle(rho, sigma), avg_std_energy(orbit));
  r.endpoint_pure = rho.is_pure() && sigma.is_pure();
  r.deffner_valid = rho.is_pure() || sigma.is_pure();
  return r;
}

QslReport bound_theta(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit) {
  require_unitary_orbit(orbit, "bound_theta");
  QslReport r = ratio_report(BoundKind::TTheta, gba_theta(rho, sigma), q_theta(orbit));
  r.equal_purity = true;
  r.endpoint_pure = rho.is_pure() && sigma.is_pure();
  return r;
}

QslReport bound_phi(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit) {
  require_unitary_orbit(orbit, "bound_phi");
  QslReport r = ratio_report(BoundKind::TPhi, phi_angle(rho, sigma), q_phi(orbit));
  r.equal_purity = true;
  r.endpoint_pure = rho.is_pure() && sigma.is_pure();
  return r;
}

QslReport bound_unified_mixed(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const Orbit& orbit) {
  QslReport l = bound_tl(rho, sigma, orbit);
  QslReport t = bound_theta(rho, sigma, orbit);
  QslReport p = bound_phi(rho, sigma, orbit);
  QslReport best = l;
  if (t.value > best.value) best = t;
  if (p.value > best.value) best = p;
  best.kind = BoundKind::TUnified;
  return best;
}

QslReport bound_td(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit) {
  double dist = (rho.matrix() - sigma.matrix()).norm();
  double speed = avg_speed_hs(orbit);
  if (speed <= 0.0 && dist > 1e-12)
    throw Error(ErrorCode::Numerical, "bound_td: frozen orbit with separated endpoints");
  QslReport r = ratio_report(BoundKind::TD, dist, speed);
  r.endpoint_pure = rho.is_pure() && sigma.is_pure();
  r.deffner_valid = rho.is_pure() || sigma.is_pure();
  return r;
}

QslReport bound_sun(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit) {
  double z = overlap(rho, sigma);
  double x = rho.purity(), y = sigma.purity();
  double dist = std::abs(1.0 - z / std::sqrt(x * y));
  // Denominator is the averaged relative speed ||rho_dot|| / ||rho_t||.
  std::vector<double> v(orbit.nodes());
  for (int k = 0; k < orbit.nodes(); ++k)
    v[k] = instantaneous_speed(orbit, k) / std::sqrt(orbit.states[k].purity());
  double speed = 2.0 * trapezoid_average(orbit.times, v);
  return ratio_report(BoundKind::TSun, dist, speed);
}

QslReport bound_delcampo(const DensityMatrix& rho, const DensityMatrix& sigma,
                         const Orbit& orbit) {
  double z = overlap(rho, sigma);
  double x = rho.purity();
  double dist = std::abs(1.0 - z / x) * x;
  return ratio_report(BoundKind::TDelCampo, dist, avg_speed_hs(orbit));
}

QslReport bound_deffner(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit) {
  double f = fidelity(rho, sigma);
  double angle = safe_arccos(f);
  double dist = std::sin(angle) * std::sin(angle);
  QslReport r = ratio_report(BoundKind::TDeffner, dist, avg_speed_hs(orbit));
  r.deffner_valid = rho.is_pure() || sigma.is_pure();
  r.endpoint_pure = r.deffner_valid;
  return r;
}

QslReport bound_sun_star(const DensityMatrix& rho, const DensityMatrix& sigma, const Orbit& orbit) {
  double z = overlap(rho, sigma);
  double x = rho.purity(), y = sigma.purity();
  double dist = std::abs(1.0 - z / std::sqrt(x * y)) * std::sqrt(std::max(x, y)) / 2.0;
  return ratio_report(BoundKind::TSunStar, dist, avg_speed_hs(orbit));
}

QslReport bound_deffner_star(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const Orbit& orbit) {
  double e = std::min(sub_fidelity(rho, sigma), 1.0);
  double angle = safe_arccos(e);
  double dist = std::sin(angle) * std::sin(angle);
  QslReport r = ratio_report(BoundKind::TDeffnerStar, dist, avg_speed_hs(orbit));
  r.deffner_valid = rho.is_pure() || sigma.is_pure();
  return r;
}

double deffner_region_probability(double x, double y, int resolution) {
  if (!(x > 0.0 && x <= 1.0 && y > 0.0 && y <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "deffner_region_probability: purities outside (0, 1]");
  if (resolution < 2)
    throw Error(ErrorCode::InvalidArgument, "deffner_region_probability: resolution too small");
  const double z_max = std::sqrt(x * y);
  double area = 0.0, favorable = 0.0;
  for (int i = 0; i < resolution; ++i) {
    double z = z_max * (i + 0.5) / resolution;
    double b_max = z * z;
    // Midpoint rule in beta for this z column.
    for (int j = 0; j < resolution; ++j) {
      double beta = b_max * (j + 0.5) / resolution;
      double cell = (z_max / resolution) * (b_max / resolution);
      area += cell;
      double e2 = std::min(z + std::sqrt(std::max(2.0 * (z * z - beta), 0.0)), 1.0);
      double gamma = std::sqrt(std::max(x + y - 2.0 * z, 0.0)) - (1.0 - e2);
      if (gamma >= 0.0) favorable += cell;
    }
  }
  return favorable / area;
}

double analytic_t_theta(double theta, double lambda) {
  (void)lambda;
  return theta;
}

double analytic_t_phi(double theta, double lambda) {
  double k = 1.0 - 2.0 * lambda;
  if (std::abs(k) < 1e-12)
    throw Error(ErrorCode::UndefinedAngle, "analytic_t_phi: maximally mixed");
  double arg = (1.0 + k * k * std::cos(2.0 * theta)) / (1.0 + k * k);
  return safe_arccos(std::sqrt(std::clamp(arg, 0.0, 1.0))) * std::sqrt((1.0 + k * k) / 2.0) /
         std::abs(k);
}

double analytic_t_bures(double theta, double lambda) {
  double k = 1.0 - 2.0 * lambda;
  double c2t = std::cos(2.0 * theta), ct = std::cos(theta), st = std::sin(theta);
  double root = std::sqrt(std::max(1.0 - k * k * st * st, 0.0));
  double fp = 0.5 * std::sqrt(std::max(1.0 + k * k * c2t + 2.0 * k * ct * root, 0.0));
  double fm = 0.5 * std::sqrt(std::max(1.0 + k * k * c2t - 2.0 * k * ct * root, 0.0));
  return safe_arccos(fp + fm);  // Delta E = 1 for the unit off-diagonal coupling
}

TightnessSummary tightness_sweep(int d, int samples, const SampleStream& stream,
                                 std::vector<TightnessRecord>* records) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "tightness_sweep: d must be >= 2");
  TightnessSummary summary;
  summary.d = d;
  summary.samples = samples;
  if (records) records->reserve(samples);
  for (int i = 0; i < samples; ++i) {
    SampleStream s = stream.substream(i);
    DensityMatrix rho = bures_state(d, s);
    Matrix h = random_hamiltonian(d, s);
    Orbit orbit = unitary_orbit(rho, h, 1.0, 2);
    const DensityMatrix& sigma = orbit.final_state();
    double t_l = bound_tl(rho, sigma, orbit).value;
    double t_theta = bound_theta(rho, sigma, orbit).value;
    double t_phi = bound_phi(rho, sigma, orbit).value;
    double best = std::max(t_theta, t_phi);
    if (t_l > best) {
      summary.l_wins++;
      if (best > 0.0) summary.max_excess = std::max(summary.max_excess, t_l / best - 1.0);
    }
    if (records)
      records->push_back({rho.purity(), sigma.purity(), t_l, t_theta, t_phi, orbit.duration()});
  }
  summary.win_fraction = samples > 0 ? static_cast<double>(summary.l_wins) / samples : 0.0;
  return summary;
}

}  // namespace qsl
