#include "qsl/states.hpp"

#include <cmath>

namespace qsl {

GeneratorBasis gell_mann_basis(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "gell_mann_basis: d must be >= 2");
  GeneratorBasis basis;
  basis.d = d;
  basis.ops.reserve(static_cast<size_t>(d) * d - 1);
  // Symmetric block: |j><k| + |k><j|, j < k.
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      basis.ops.push_back(m);
    }
  // Antisymmetric block: -i|j><k| + i|k><j|, j < k.
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = Complex(0.0, -1.0);
      m(k, j) = Complex(0.0, 1.0);
      basis.ops.push_back(m);
    }
  // Diagonal block: sqrt(2/(l(l+1))) (sum_{j<=l} |j><j| - l |l><l|), l = 1..d-1.
  for (int l = 1; l < d; ++l) {
    Matrix m = Matrix::Zero(d, d);
    double norm = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -norm * l;
    basis.ops.push_back(m);
  }
  return basis;
}

DensityMatrix::DensityMatrix(const Matrix& m, double psd_tol) {
  require_hermitian(m, "DensityMatrix");
  double tr = m.trace().real();
  if (std::abs(m.trace().imag()) > 1e-10 || std::abs(tr - 1.0) > 1e-10)
    throw Error(ErrorCode::NotAState, "DensityMatrix: trace is not one");
  EigSystem es = eig_hermitian(m);
  double clamped = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    double lambda = es.values(k);
    if (lambda < -psd_tol)
      throw Error(ErrorCode::NotAState,
                  "DensityMatrix: negative eigenvalue " + std::to_string(lambda));
    if (lambda < 0.0) {
      es.values(k) = 0.0;
      clamped += lambda;
    }
  }
  if (clamped != 0.0) es.values /= es.values.sum();
  spectrum_ = es.values;
  eigenvectors_ = es.vectors;
  m_ = hermitize(es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint());
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  double n = psi.norm();
  if (n <= 0.0) throw Error(ErrorCode::InvalidArgument, "DensityMatrix::pure: zero vector");
  Vector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "maximally_mixed: d must be >= 1");
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::from_eigensystem(const RealVector& probs, const Matrix& basis) {
  if (probs.size() != basis.rows())
    throw Error(ErrorCode::DimensionMismatch, "from_eigensystem: sizes disagree");
  return DensityMatrix(basis * probs.cast<Complex>().asDiagonal() * basis.adjoint());
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

DensityMatrix DensityMatrix::conjugated(const Matrix& u) const {
  require_unitary(u, "DensityMatrix::conjugated");
  return DensityMatrix(u * m_ * u.adjoint());
}

BlochVector to_bloch(const DensityMatrix& rho, const GeneratorBasis& basis) {
  if (basis.d != rho.dim())
    throw Error(ErrorCode::DimensionMismatch, "to_bloch: basis dimension mismatch");
  const int d = rho.dim();
  const double c = std::sqrt(d * (d - 1) / 2.0);
  BlochVector out;
  out.d = d;
  out.r.resize(static_cast<Eigen::Index>(basis.ops.size()));
  // rho = (1 + c r.Lambda)/d  with tr[L_i L_j] = 2 d_ij  =>  r_i = d tr[rho L_i] / (2c).
  for (size_t i = 0; i < basis.ops.size(); ++i)
    out.r(static_cast<Eigen::Index>(i)) = (rho.matrix() * basis.ops[i]).trace().real() * d / (2.0 * c);
  return out;
}

DensityMatrix from_bloch(const BlochVector& r, const GeneratorBasis& basis) {
  if (basis.d != r.d || r.r.size() != static_cast<Eigen::Index>(basis.ops.size()))
    throw Error(ErrorCode::DimensionMismatch, "from_bloch: basis dimension mismatch");
  const int d = r.d;
  const double c = std::sqrt(d * (d - 1) / 2.0);
  Matrix m = Matrix::Identity(d, d);
  for (size_t i = 0; i < basis.ops.size(); ++i)
    m += c * r.r(static_cast<Eigen::Index>(i)) * basis.ops[i];
  m /= static_cast<double>(d);
  try {
    return DensityMatrix(hermitize(m), 1e-8);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAState)
      throw Error(ErrorCode::NotAState, "from_bloch: vector does not reconstruct a state");
    throw;
  }
}

double purity(const DensityMatrix& rho) { return rho.purity(); }

double vn_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < rho.spectrum().size(); ++k) {
    double p = rho.spectrum()(k);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

DensityMatrix gibbs_state(const Matrix& h0, double beta) {
  if (!std::isfinite(beta)) throw Error(ErrorCode::InvalidArgument, "gibbs_state: beta not finite");
  EigSystem es = eig_hermitian(h0);
  // Shift by the extremal level so the largest weight is exp(0).
  const double shift = beta >= 0.0 ? es.values.minCoeff() : es.values.maxCoeff();
  RealVector p(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    p(k) = std::exp(-beta * (es.values(k) - shift));
  p /= p.sum();
  return DensityMatrix::from_eigensystem(p, es.vectors);
}

std::pair<DensityMatrix, double> gibbs_matching_entropy(const Matrix& h0, double s_target,
                                                        double tol, double beta_max) {
  const int d = static_cast<int>(h0.rows());
  const double s_max = std::log(static_cast<double>(d));
  if (!(s_target > 0.0 && s_target < s_max))
    throw Error(ErrorCode::InvalidArgument, "gibbs_matching_entropy: target outside (0, log d)");
  // S(G_beta) decreases from log d at beta = 0 along beta >= 0.
  double lo = 0.0, hi = beta_max;
  while (vn_entropy(gibbs_state(h0, hi)) > s_target) {
    hi *= 2.0;
    if (hi > 1e12)
      throw Error(ErrorCode::Numerical, "gibbs_matching_entropy: bracket expansion failed");
  }
  double beta = 0.0;
  for (int it = 0; it < 200; ++it) {
    beta = 0.5 * (lo + hi);
    double s = vn_entropy(gibbs_state(h0, beta));
    if (std::abs(s - s_target) <= tol) break;
    if (s > s_target)
      lo = beta;
    else
      hi = beta;
  }
  return {gibbs_state(h0, beta), beta};
}

DensityMatrix mix_with(const DensityMatrix& rho, const DensityMatrix& phi, double eps) {
  if (rho.dim() != phi.dim())
    throw Error(ErrorCode::DimensionMismatch, "mix_with: dimension mismatch");
  if (!(eps >= 0.0 && eps <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "mix_with: eps outside [0, 1]");
  return DensityMatrix(eps * rho.matrix() + (1.0 - eps) * phi.matrix());
}

DensityMatrix depolarize(const DensityMatrix& rho, double eps) {
  return mix_with(rho, DensityMatrix::maximally_mixed(rho.dim()), eps);
}

}  // namespace qsl
