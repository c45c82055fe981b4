// Density matrices, probability vectors and entropy functionals.

#pragma once

#include "polsim/common.hpp"
#include "polsim/linalg.hpp"

#include <stdexcept>
#include <string>

namespace polsim {

// Throws std::invalid_argument unless rho is Hermitian, unit trace and
// positive semidefinite within the structural tolerances.
void validate_density(const Matrix& rho, double herm_tol = tol::hermitian,
                      double trace_tol = tol::trace, double eig_tol = tol::eigenvalue);

// Value type carrying the state invariants; validation happens once at
// construction. `trusted` skips the check for states produced by maps that
// preserve the invariants by construction.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix rho) : rho_(std::move(rho)) { validate_density(rho_); }

    static DensityMatrix trusted(Matrix rho) { return DensityMatrix(std::move(rho), Trusted{}); }

    const Matrix& mat() const { return rho_; }
    Eigen::Index dim() const { return rho_.rows(); }

private:
    struct Trusted {};
    DensityMatrix(Matrix rho, Trusted) : rho_(std::move(rho)) {}
    Matrix rho_;
};

// Throws unless entries lie in [0,1] and sum to 1 within `sum_tol`.
void validate_probability_vector(const RealVector& p, double sum_tol = tol::trace);

// -sum p ln p in nats, with 0 ln 0 := 0. Validates the input.
double shannon_entropy(const RealVector& p);

// Same functional without the validity check, for per-layer hot loops where
// the populations come from a trace-one state by construction.
double shannon_entropy_unchecked(const RealVector& p);

double von_neumann_entropy(const Matrix& rho);

inline double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

}  // namespace polsim
