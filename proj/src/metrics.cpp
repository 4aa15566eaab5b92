#include "qsl/metrics.hpp"

#include <cmath>

namespace qsl {

namespace {

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma, const char* who) {
  if (rho.dim() != sigma.dim())
    throw Error(ErrorCode::DimensionMismatch, std::string(who) + ": dimension mismatch");
}

void require_same_purity(const DensityMatrix& rho, const DensityMatrix& sigma, const char* who) {
  double pr = rho.purity(), ps = sigma.purity();
  if (std::abs(pr - ps) > kPurityTol * std::max(1.0, std::max(pr, ps)))
    throw Error(ErrorCode::InvalidArgument, std::string(who) + ": purities differ");
}

}  // namespace

double safe_arccos(double x) {
  if (x > 1.0 + kArccosClamp || x < -1.0 - kArccosClamp)
    throw Error(ErrorCode::Numerical, "arccos argument outside [-1, 1]: " + std::to_string(x));
  return std::acos(std::clamp(x, -1.0, 1.0));
}

double fubini_study(const Vector& psi, const Vector& phi) {
  if (psi.size() != phi.size())
    throw Error(ErrorCode::DimensionMismatch, "fubini_study: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-10 || std::abs(phi.norm() - 1.0) > 1e-10)
    throw Error(ErrorCode::InvalidArgument, "fubini_study: vectors must be unit norm");
  return safe_arccos(std::abs(psi.dot(phi)));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity");
  // Rank-one inputs reduce to sqrt(tr[rho sigma]), which avoids the
  // square-root-of-roundoff error of the general route.
  if (rho.purity() >= 1.0 - 1e-12 || sigma.purity() >= 1.0 - 1e-12)
    return std::min(std::sqrt(std::max(overlap(rho, sigma), 0.0)), 1.0);
  Matrix root = sqrt_psd(rho.matrix());
  Matrix inner = hermitize(root * sigma.matrix() * root);
  EigSystem es = eig_hermitian(inner);
  double f = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    f += std::sqrt(std::max(es.values(k), 0.0));
  return std::min(f, 1.0 + kArccosClamp);
}

double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return safe_arccos(fidelity(rho, sigma));
}

double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "overlap");
  return (rho.matrix() * sigma.matrix()).trace().real();
}

double gba_theta(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "gba_theta");
  require_same_purity(rho, sigma, "gba_theta");
  const double d = rho.dim();
  double denom = d * rho.purity() - 1.0;
  if (denom < 1e-12)
    throw Error(ErrorCode::UndefinedAngle, "gba_theta: undefined at the maximally mixed state");
  return safe_arccos((d * overlap(rho, sigma) - 1.0) / denom);
}

double phi_angle(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "phi_angle");
  require_same_purity(rho, sigma, "phi_angle");
  double denom = rho.purity();
  if (denom < 1e-12) throw Error(ErrorCode::UndefinedAngle, "phi_angle: vanishing purity");
  double ratio = overlap(rho, sigma) / denom;
  return safe_arccos(std::sqrt(std::clamp(ratio, 0.0, 1.0 + kArccosClamp)));
}

double euclid_d(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "euclid_d");
  const double d = rho.dim();
  return std::sqrt(d / (d - 1.0)) * (rho.matrix() - sigma.matrix()).norm();
}

double sub_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "sub_fidelity");
  double z = overlap(rho, sigma);
  double z2 = (rho.matrix() * sigma.matrix() * rho.matrix() * sigma.matrix()).trace().real();
  double inner = std::max(2.0 * (z * z - z2), 0.0);
  return std::sqrt(std::max(z + std::sqrt(inner), 0.0));
}

double affinity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "affinity");
  return (sqrt_psd(rho.matrix()) * sqrt_psd(sigma.matrix())).trace().real();
}

double relative_purity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "relative_purity");
  return overlap(rho, sigma) / rho.purity();
}

}  // namespace qsl
