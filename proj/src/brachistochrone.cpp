#include "qsl/brachistochrone.hpp"

#include "qsl/bounds.hpp"

#include <cmath>
#include <numbers>

namespace qsl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Deterministic eigenvector gauge: each column's largest-modulus entry made
// real positive. Keeps connecting gates and geometric phases reproducible.
Matrix gauge_fixed(const Matrix& basis) {
  Matrix out = basis;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      double mag = std::abs(out(r, c));
      if (mag > best + 1e-15) {
        best = mag;
        pivot = r;
      }
    }
    Complex z = out(pivot, c);
    if (std::abs(z) > 0.0) out.col(c) *= std::conj(z) / std::abs(z);
  }
  return out;
}

// Degenerate blocks of an ascending spectrum under the equality rule
// |l_i - l_j| <= kDegenTol * max(1, |l_i|), chained over neighbors.
std::vector<int> block_sizes(const RealVector& spectrum) {
  std::vector<int> blocks;
  int size = 1;
  for (Eigen::Index k = 1; k < spectrum.size(); ++k) {
    double tol = kDegenTol * std::max(1.0, std::abs(spectrum(k)));
    if (spectrum(k) - spectrum(k - 1) <= tol) {
      ++size;
    } else {
      blocks.push_back(size);
      size = 1;
    }
  }
  blocks.push_back(size);
  return blocks;
}

struct ProblemFrame {
  Matrix basis_rho;   // gauged ascending eigenbasis of rho
  Matrix basis_sigma; // gauged ascending eigenbasis of sigma
  std::vector<int> blocks;
};

ProblemFrame make_frame(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw Error(ErrorCode::DimensionMismatch, "brachistochrone: dimension mismatch");
  if ((rho.spectrum() - sigma.spectrum()).cwiseAbs().maxCoeff() > 1e-8)
    throw Error(ErrorCode::SpectrumMismatch, "brachistochrone: states are not isospectral");
  std::vector<int> br = block_sizes(rho.spectrum());
  std::vector<int> bs = block_sizes(sigma.spectrum());
  if (br != bs)
    throw Error(ErrorCode::SpectrumMismatch, "brachistochrone: multiplicity structures differ");
  return {gauge_fixed(rho.eigenvectors()), gauge_fixed(sigma.eigenvectors()), br};
}

double delta_e(const Matrix& h, const DensityMatrix& rho) {
  double e2 = (rho.matrix() * h * h).trace().real();
  double e1 = (rho.matrix() * h).trace().real();
  return std::sqrt(std::max(e2 - e1 * e1, 0.0));
}

}  // namespace

Matrix connect_unitary(const DensityMatrix& rho, const DensityMatrix& sigma,
                       const RealVector& phases, const std::vector<Matrix>& blocks) {
  ProblemFrame frame = make_frame(rho, sigma);
  const int d = rho.dim();
  if (phases.size() != d)
    throw Error(ErrorCode::InvalidArgument, "connect_unitary: need one phase per level");
  Vector diag(d);
  for (int k = 0; k < d; ++k) diag(k) = std::polar(1.0, phases(k));
  Matrix core = diag.asDiagonal();
  if (!blocks.empty()) {
    size_t degenerate = 0;
    for (int b : frame.blocks)
      if (b > 1) ++degenerate;
    if (blocks.size() != degenerate)
      throw Error(ErrorCode::InvalidArgument,
                  "connect_unitary: need one unitary per degenerate block");
    Matrix big = Matrix::Identity(d, d);
    int at = 0;
    size_t used = 0;
    for (int b : frame.blocks) {
      if (b > 1) {
        const Matrix& u = blocks[used++];
        require_unitary(u, "connect_unitary block");
        if (u.rows() != b)
          throw Error(ErrorCode::DimensionMismatch, "connect_unitary: block size mismatch");
        big.block(at, at, b, b) = u;
      }
      at += b;
    }
    core = core * big;
  }
  return frame.basis_sigma * core * frame.basis_rho.adjoint();
}

Matrix mask(const Matrix& h, const DensityMatrix& rho) {
  require_hermitian(h, "mask");
  if (h.rows() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "mask: dimension mismatch");
  const Matrix& d = rho.eigenvectors();
  Matrix a = d.adjoint() * h * d;
  std::vector<int> blocks = block_sizes(rho.spectrum());
  Matrix kept = Matrix::Zero(h.rows(), h.cols());
  int at = 0;
  for (int b : blocks) {
    kept.block(at, at, b, b) = a.block(at, at, b, b);
    at += b;
  }
  return hermitize(d * kept * d.adjoint());
}

double efficiency_eta(const Matrix& h, const DensityMatrix& rho) {
  require_hermitian(h, "efficiency_eta");
  double norm = op_norm(h);
  if (norm <= 1e-300)
    throw Error(ErrorCode::InvalidArgument, "efficiency_eta: zero Hamiltonian");
  return delta_e(h, rho) / norm;
}

double efficiency_eta_star(const Matrix& h, const DensityMatrix& rho) {
  require_hermitian(h, "efficiency_eta_star");
  if (h.norm() <= 1e-300)
    throw Error(ErrorCode::InvalidArgument, "efficiency_eta_star: zero Hamiltonian");
  double v2 = 0.5 * (h * rho.matrix() - rho.matrix() * h).squaredNorm();
  double e = (rho.matrix() * h).trace().real();
  double den = std::sqrt(v2 + e * e);
  if (den <= 1e-300) return 0.0;
  return std::sqrt(v2) / den;
}

double evolution_time(const Matrix& h, const DensityMatrix& rho, double omega) {
  double de = delta_e(h, rho);
  return omega > 0.0 ? de / omega : de;
}

RealVector gate_phases(const Matrix& gate, const DensityMatrix& rho, const DensityMatrix& sigma) {
  ProblemFrame frame = make_frame(rho, sigma);
  Matrix core = frame.basis_sigma.adjoint() * gate * frame.basis_rho;
  RealVector phases(rho.dim());
  for (int k = 0; k < rho.dim(); ++k) phases(k) = std::arg(core(k, k));
  return phases;
}

BrachRun solve(const DensityMatrix& rho, const DensityMatrix& sigma, const RealVector& phases0,
               double epsilon, BrachVariant variant, const BrachOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(ErrorCode::InvalidArgument, "solve: epsilon must lie in (0, 1)");
  if (options.max_iterations < 1)
    throw Error(ErrorCode::InvalidArgument, "solve: max_iterations must be >= 1");

  BrachRun run;
  run.variant = variant;
  run.epsilon = epsilon;
  run.max_iterations = options.max_iterations;

  Matrix gate = connect_unitary(rho, sigma, phases0);
  Matrix h, h_final;
  for (int j = 0;; ++j) {
    h = log_unitary(gate).hamiltonian;
    Matrix par_rho, par_sigma;
    double stop_norm = 0.0;
    switch (variant) {
      case BrachVariant::Forward:
        par_rho = mask(h, rho);
        stop_norm = par_rho.norm();
        break;
      case BrachVariant::Backward:
        par_sigma = mask(h, sigma);
        stop_norm = par_sigma.norm();
        break;
      case BrachVariant::TwoSided:
        par_rho = mask(h, rho);
        par_sigma = mask(h, sigma);
        stop_norm = std::max(par_rho.norm(), par_sigma.norm());
        break;
    }

    BrachIterate it;
    it.h_par_norm = stop_norm;
    it.h_norm = h.norm();
    it.eta_star = it.h_norm > 1e-300 ? efficiency_eta_star(h, rho) : 1.0;
    it.tau_action = delta_e(h, rho);
    it.phases = gate_phases(gate, rho, sigma);
    run.history.push_back(std::move(it));

    if (options.track_endpoint_error) {
      Matrix u = exp_hermitian(h, 1.0);
      run.endpoint_error = std::max(
          run.endpoint_error, (u * rho.matrix() * u.adjoint() - sigma.matrix()).norm());
    }

    if (stop_norm <= epsilon * h.norm()) {
      run.converged = true;
      run.iterations = j;
      break;
    }
    if (j >= options.max_iterations) {
      run.iterations = j;
      break;  // unconverged runs are data, not failures
    }

    switch (variant) {
      case BrachVariant::Forward:
        gate = gate * exp_hermitian(par_rho, -1.0);  // exp(+i par)
        break;
      case BrachVariant::Backward:
        gate = exp_hermitian(par_sigma, -1.0) * gate;
        break;
      case BrachVariant::TwoSided:
        gate = exp_hermitian(par_sigma, -1.0) * gate * exp_hermitian(par_rho, -1.0);
        break;
    }
  }

  run.final_hamiltonian = h;
  run.final_gate = gate;
  if (h.norm() > 1e-300) {
    run.eta = efficiency_eta(h, rho);
    run.eta_star = efficiency_eta_star(h, rho);
    Orbit orbit = unitary_orbit(rho, h, 1.0, options.qsl_grid);
    double t_qsl = bound_unified_mixed(rho, sigma, orbit).value;
    run.ratio_to_qsl = t_qsl > 1e-12 ? 1.0 / t_qsl : 1.0;
  } else {
    run.eta = 1.0;
    run.eta_star = 1.0;
    run.ratio_to_qsl = 1.0;
  }
  return run;
}

double perturbation_study(const DensityMatrix& rho, const DensityMatrix& sigma, double delta,
                          PerturbKind kind, SampleStream& s, double epsilon,
                          const RealVector& phases0, const BrachOptions& options) {
  if (!(delta >= 0.0 && delta < 1.0))
    throw Error(ErrorCode::InvalidArgument, "perturbation_study: delta outside [0, 1)");
  BrachRun base = solve(rho, sigma, phases0, epsilon, BrachVariant::Forward, options);

  DensityMatrix rho_p = rho;
  DensityMatrix sigma_p = sigma;
  if (kind == PerturbKind::Convex) {
    DensityMatrix chi = bures_state(rho.dim(), s);
    rho_p = mix_with(rho, chi, 1.0 - delta);  // (1 - delta) rho + delta chi
    RealVector zero = RealVector::Zero(rho.dim());
    Matrix carrier = connect_unitary(rho, sigma, zero);
    sigma_p = rho_p.conjugated(carrier);
  } else {
    Matrix direction = random_hamiltonian(rho.dim(), s);
    direction /= direction.norm();
    Matrix u = exp_hermitian(direction, -delta);  // exp(+i direction delta)
    rho_p = rho.conjugated(u);
    sigma_p = sigma.conjugated(u);
  }

  BrachRun perturbed = solve(rho_p, sigma_p, phases0, epsilon, BrachVariant::Forward, options);
  double ref = base.final_hamiltonian.norm();
  if (ref <= 1e-300) return perturbed.final_hamiltonian.norm();
  return (base.final_hamiltonian - perturbed.final_hamiltonian).norm() / ref;
}

MultiStartResult multi_start(const DensityMatrix& rho, const DensityMatrix& sigma, int L,
                             double epsilon, SampleStream& s, const BrachOptions& options) {
  if (L < 1) throw Error(ErrorCode::InvalidArgument, "multi_start: L must be >= 1");
  MultiStartResult result;
  result.iteration_counts.reserve(L);
  int best_iterations = options.max_iterations + 1;
  for (int i = 0; i < L; ++i) {
    SampleStream sub = s.substream(i);
    RealVector phases(rho.dim());
    for (int k = 0; k < rho.dim(); ++k) phases(k) = kTwoPi * sub.uniform();
    BrachRun run = solve(rho, sigma, phases, epsilon, BrachVariant::Forward, options);
    result.iteration_counts.push_back(run.converged ? run.iterations
                                                    : options.max_iterations + 1);
    if (run.converged) {
      ++result.converged_runs;
      if (run.iterations < best_iterations) {
        best_iterations = run.iterations;
        result.best = std::move(run);
      }
    }
  }
  return result;
}

}  // namespace qsl
