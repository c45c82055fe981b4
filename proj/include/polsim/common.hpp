// Shared aliases and numeric tolerances.

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace polsim {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
// Structural checks on states and probability vectors.
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double eigenvalue = 1e-10;
// Unitarity of scattering matrices and evolution operators.
inline constexpr double unitary = 1e-10;
// Spectral round trips (log/exp) and cross-construction agreement.
inline constexpr double spectral = 1e-9;
// Channel agreement between independent constructions.
inline constexpr double channel = 1e-12;
inline constexpr double kraus_completeness = 1e-13;
}  // namespace tol

}  // namespace polsim
