// Dense complex matrix utilities: tensor products, partial trace, principal
// logarithm of a unitary, exponentials of anti-Hermitian generators.

#pragma once

#include "polsim/common.hpp"

#include <stdexcept>

namespace polsim {

inline double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

inline Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

inline bool is_hermitian(const Matrix& a, double tolerance = tol::hermitian) {
    return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tolerance;
}

inline bool is_unitary(const Matrix& a, double tolerance = tol::unitary) {
    if (a.rows() != a.cols()) return false;
    return max_abs(a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())) <= tolerance;
}

Matrix kron(const Matrix& a, const Matrix& b);

// Partial trace of rho on A (x) B. `traced` selects the factor to trace out:
// 0 traces out A (keeps B), 1 traces out B (keeps A).
Matrix partial_trace(const Matrix& rho, int dim_a, int dim_b, int traced);

// Principal logarithm of a unitary matrix via Schur decomposition, with
// eigenphases mapped to (-pi, pi]. The result is anti-Hermitian. Throws if
// the input is not unitary to within `tolerance`.
Matrix matrix_log_unitary(const Matrix& s, double tolerance = tol::unitary);

// exp(G) for anti-Hermitian G, computed through the spectrum of iG.
Matrix expm_antihermitian(const Matrix& g);

}  // namespace polsim
