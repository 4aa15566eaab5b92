#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsl/matcore.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Density matrices, generalized Bloch vectors, Gibbs states.
// ---------------------------------------------------------------------------

/// Orthonormal traceless Hermitian generator set for su(d), tr[L_i L_j] = 2 d_ij.
/// Ordering is fixed as (symmetric, antisymmetric, diagonal) blocks, each
/// lexicographic, so Bloch vectors serialize deterministically.
struct GeneratorBasis {
  int d = 0;
  std::vector<Matrix> ops;
};

GeneratorBasis gell_mann_basis(int d);

class DensityMatrix {
 public:
  /// Validates trace one and positivity. Eigenvalues in [-psd_tol, 0) are
  /// clamped to zero and the state renormalized; anything below raises NotAState.
  explicit DensityMatrix(const Matrix& m, double psd_tol = kPsdTol);

  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix maximally_mixed(int d);
  /// Builds sum_k probs(k) |basis_k><basis_k| from a unitary column basis.
  static DensityMatrix from_eigensystem(const RealVector& probs, const Matrix& basis);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  /// Ascending eigenvalues, computed once at construction.
  const RealVector& spectrum() const { return spectrum_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

  double purity() const;
  bool is_pure(double tol = 1e-9) const { return purity() >= 1.0 - tol; }

  DensityMatrix conjugated(const Matrix& u) const;

 private:
  Matrix m_;
  RealVector spectrum_;
  Matrix eigenvectors_;
};

struct BlochVector {
  int d = 0;
  RealVector r;
  std::string basis = "gellmann";
  double norm() const { return r.norm(); }
};

BlochVector to_bloch(const DensityMatrix& rho, const GeneratorBasis& basis);
DensityMatrix from_bloch(const BlochVector& r, const GeneratorBasis& basis);

double purity(const DensityMatrix& rho);
/// Von Neumann entropy, natural log, 0 log 0 = 0.
double vn_entropy(const DensityMatrix& rho);

DensityMatrix gibbs_state(const Matrix& h0, double beta);

/// Finds beta >= 0 with S(G_beta) = s_target by bisection on the monotone
/// branch; s_target must lie in (0, log d).
std::pair<DensityMatrix, double> gibbs_matching_entropy(const Matrix& h0, double s_target,
                                                        double tol = 1e-8,
                                                        double beta_max = 1e3);

/// Convex mixture eps*rho + (1-eps)*phi.
DensityMatrix mix_with(const DensityMatrix& rho, const DensityMatrix& phi, double eps);

/// Pure depolarization toward the maximally mixed state.
DensityMatrix depolarize(const DensityMatrix& rho, double eps);

}  // namespace qsl
