#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qsl {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Tolerances used by the type invariants and numerical guards.
inline constexpr double kHermTol = 1e-10;     // relative Hermiticity defect
inline constexpr double kUnitTol = 1e-10;     // unitarity defect per sqrt(dim)
inline constexpr double kPsdTol = 1e-10;      // eigenvalue clamp window for states
inline constexpr double kBranchGap = 1e-8;    // eigenphase distance to the log branch cut
inline constexpr double kPurityTol = 1e-8;    // relative purity match for angle distances
inline constexpr double kDegenTol = 1e-9;     // eigenvalue equality rule for degeneracy
inline constexpr double kArccosClamp = 1e-7;  // admissible arccos-argument overshoot

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotAState,
  NotPsd,
  SpectrumMismatch,
  UndefinedAngle,
  ResourceLimit,
  Numerical,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsl
