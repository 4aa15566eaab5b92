#pragma once

#include <vector>

#include "qsl/types.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Dense complex-matrix backbone. All matrix functions go through an explicit
// eigendecomposition; unitaries are handled through their Schur form, which is
// diagonal for normal matrices.
// ---------------------------------------------------------------------------

Matrix hermitize(const Matrix& a);

bool is_hermitian(const Matrix& a, double tol = kHermTol);
bool is_unitary(const Matrix& u, double tol = kUnitTol);

void require_square(const Matrix& a, const char* who);
void require_hermitian(const Matrix& a, const char* who, double tol = kHermTol);
void require_unitary(const Matrix& u, const char* who, double tol = kUnitTol);

struct EigSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns, unitary
};

/// Eigendecomposition of a Hermitian operator, A = V diag(values) V^dag.
EigSystem eig_hermitian(const Matrix& a);

struct UnitaryLog {
  Matrix hamiltonian;     // H = i log U, eigenphases of U taken in (-pi, pi]
  bool branch_ambiguous;  // some eigenphase within kBranchGap of the cut at -pi
};

/// Principal logarithm of a unitary: H = i log U with exp(-iH) = U.
UnitaryLog log_unitary(const Matrix& u, double branch_gap = kBranchGap);

/// U = exp(-i H t) for Hermitian H.
Matrix exp_hermitian(const Matrix& h, double t);

/// Square root of a positive semidefinite Hermitian operator. Eigenvalues in
/// [-psd_tol, 0) are clamped to zero; anything below raises NotPsd.
Matrix sqrt_psd(const Matrix& a, double psd_tol = kPsdTol);

struct MatrixNorms {
  double hs;     // Hilbert-Schmidt (Frobenius)
  double op;     // largest singular value
  double trace;  // sum of singular values
};

MatrixNorms norms(const Matrix& a);
double hs_norm(const Matrix& a);
double op_norm(const Matrix& a);

Matrix kron(const Matrix& a, const Matrix& b);

/// Kronecker power of a matrix, a^{\otimes n}.
Matrix kron_pow(const Matrix& a, int n);

/// Partial trace over the subsystems not listed in `keep`. `dims` are the
/// subsystem dimensions in tensor order (first factor most significant, as
/// produced by kron); their product must equal the matrix dimension.
Matrix partial_trace(const Matrix& a, const std::vector<int>& dims, const std::vector<int>& keep);

/// Embeds an operator acting on the subsystems listed in `slots` (ascending)
/// into a register of `n` subsystems of dimension `d` each, identity elsewhere.
Matrix embed_operator(const Matrix& op, const std::vector<int>& slots, int n, int d);

}  // namespace qsl
