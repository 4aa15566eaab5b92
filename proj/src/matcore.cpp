#include "qsl/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace qsl {

namespace {
constexpr double kPi = std::numbers::pi;
}

Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  double scale = a.norm();
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, scale);
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Matrix g = u.adjoint() * u;
  g -= Matrix::Identity(u.rows(), u.cols());
  return g.norm() <= tol * std::sqrt(static_cast<double>(u.rows()));
}

void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, std::string(who) + ": square matrix required");
  if (!a.allFinite())
    throw Error(ErrorCode::InvalidArgument, std::string(who) + ": non-finite entries");
}

void require_hermitian(const Matrix& a, const char* who, double tol) {
  require_square(a, who);
  if (!is_hermitian(a, tol))
    throw Error(ErrorCode::InvalidArgument, std::string(who) + ": matrix is not Hermitian");
}

void require_unitary(const Matrix& u, const char* who, double tol) {
  require_square(u, who);
  if (!is_unitary(u, tol))
    throw Error(ErrorCode::InvalidArgument, std::string(who) + ": matrix is not unitary");
}

EigSystem eig_hermitian(const Matrix& a) {
  require_hermitian(a, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(a));
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::Numerical, "eig_hermitian: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

UnitaryLog log_unitary(const Matrix& u, double branch_gap) {
  require_unitary(u, "log_unitary");
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success)
    throw Error(ErrorCode::Numerical, "log_unitary: Schur decomposition did not converge");
  const Eigen::Index d = u.rows();
  RealVector phase(d);
  bool warn = false;
  for (Eigen::Index k = 0; k < d; ++k) {
    double phi = std::arg(schur.matrixT()(k, k));
    if (phi <= -kPi) phi = kPi;  // principal branch (-pi, pi]
    if (kPi - std::abs(phi) < branch_gap) warn = true;
    phase(k) = phi;
  }
  Matrix h = schur.matrixU() * (-phase.cast<Complex>()).asDiagonal() * schur.matrixU().adjoint();
  return {hermitize(h), warn};
}

Matrix exp_hermitian(const Matrix& h, double t) {
  EigSystem es = eig_hermitian(h);
  Vector diag(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    diag(k) = std::exp(Complex(0.0, -es.values(k) * t));
  return es.vectors * diag.asDiagonal() * es.vectors.adjoint();
}

Matrix sqrt_psd(const Matrix& a, double psd_tol) {
  EigSystem es = eig_hermitian(a);
  const double scale = std::max(1.0, std::abs(es.values(es.values.size() - 1)));
  RealVector root(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    double lambda = es.values(k);
    if (lambda < -psd_tol * scale)
      throw Error(ErrorCode::NotPsd, "sqrt_psd: negative eigenvalue " + std::to_string(lambda));
    root(k) = std::sqrt(std::max(lambda, 0.0));
  }
  return hermitize(es.vectors * root.cast<Complex>().asDiagonal() * es.vectors.adjoint());
}

MatrixNorms norms(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0)
    throw Error(ErrorCode::DimensionMismatch, "norms: empty matrix");
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  return {a.norm(), sv(0), sv.sum()};
}

double hs_norm(const Matrix& a) { return a.norm(); }

double op_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron_pow(const Matrix& a, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "kron_pow: n must be >= 1");
  Matrix out = a;
  for (int i = 1; i < n; ++i) out = kron(out, a);
  return out;
}

Matrix partial_trace(const Matrix& a, const std::vector<int>& dims, const std::vector<int>& keep) {
  require_square(a, "partial_trace");
  long total = 1;
  for (int d : dims) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "partial_trace: bad subsystem dimension");
    total *= d;
  }
  if (total != a.rows())
    throw Error(ErrorCode::DimensionMismatch, "partial_trace: dims do not factor the matrix");
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  long kept_dim = 1;
  for (int k : keep) {
    if (k < 0 || k >= n) throw Error(ErrorCode::InvalidArgument, "partial_trace: bad keep index");
    if (kept[k]) throw Error(ErrorCode::InvalidArgument, "partial_trace: duplicate keep index");
    kept[k] = true;
    kept_dim *= dims[k];
  }

  // For each full index, its compressed kept / traced sub-indices. First tensor
  // factor is most significant, matching kron().
  std::vector<long> keep_part(total), trace_part(total);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx, kp = 0, tp = 0;
    for (int s = 0; s < n; ++s) {
      long stride = 1;
      for (int t = s + 1; t < n; ++t) stride *= dims[t];
      long comp = (rem / stride) % dims[s];
      rem -= comp * stride;
      if (kept[s])
        kp = kp * dims[s] + comp;
      else
        tp = tp * dims[s] + comp;
    }
    keep_part[idx] = kp;
    trace_part[idx] = tp;
  }

  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (long r = 0; r < total; ++r)
    for (long c = 0; c < total; ++c)
      if (trace_part[r] == trace_part[c]) out(keep_part[r], keep_part[c]) += a(r, c);
  return out;
}

Matrix embed_operator(const Matrix& op, const std::vector<int>& slots, int n, int d) {
  const int k = static_cast<int>(slots.size());
  long sub_dim = 1;
  for (int i = 0; i < k; ++i) sub_dim *= d;
  if (op.rows() != sub_dim || op.cols() != sub_dim)
    throw Error(ErrorCode::DimensionMismatch, "embed_operator: operator does not match slots");
  long total = 1;
  for (int i = 0; i < n; ++i) total *= d;

  std::vector<long> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * d;

  // Index of each full basis state within the slot subspace, and the residual
  // index over the untouched subsystems.
  std::vector<long> sub_idx(total), rest_idx(total);
  std::vector<bool> in_slots(n, false);
  for (int s : slots) {
    if (s < 0 || s >= n) throw Error(ErrorCode::InvalidArgument, "embed_operator: bad slot");
    in_slots[s] = true;
  }
  for (long idx = 0; idx < total; ++idx) {
    long sub = 0;
    for (int s : slots) sub = sub * d + (idx / stride[s]) % d;
    long rest = 0;
    for (int s = 0; s < n; ++s)
      if (!in_slots[s]) rest = rest * d + (idx / stride[s]) % d;
    sub_idx[idx] = sub;
    rest_idx[idx] = rest;
  }

  Matrix out = Matrix::Zero(total, total);
  for (long r = 0; r < total; ++r)
    for (long c = 0; c < total; ++c)
      if (rest_idx[r] == rest_idx[c]) out(r, c) = op(sub_idx[r], sub_idx[c]);
  return out;
}

}  // namespace qsl
