#include "polsim/density.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace polsim {

void validate_density(const Matrix& rho, double herm_tol, double trace_tol, double eig_tol) {
    if (rho.rows() != rho.cols() || rho.rows() == 0)
        throw std::invalid_argument("density: matrix must be square and non-empty");
    if (!rho.allFinite()) throw std::invalid_argument("density: entries must be finite");
    if (max_abs(rho - rho.adjoint()) > herm_tol)
        throw std::invalid_argument("density: not Hermitian within tolerance");
    if (std::abs(rho.trace().real() - 1.0) > trace_tol || std::abs(rho.trace().imag()) > trace_tol)
        throw std::invalid_argument("density: trace differs from one");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("density: eigensolve failed");
    if (es.eigenvalues().minCoeff() < -eig_tol)
        throw std::invalid_argument("density: negative eigenvalue beyond tolerance");
}

void validate_probability_vector(const RealVector& p, double sum_tol) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!(p(i) >= -sum_tol && p(i) <= 1.0 + sum_tol))
            throw std::invalid_argument("probability vector: entry outside [0,1]");
        sum += p(i);
    }
    if (std::abs(sum - 1.0) > sum_tol)
        throw std::invalid_argument("probability vector: entries do not sum to one");
}

double shannon_entropy_unchecked(const RealVector& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double x = p(i);
        if (x > 0.0) s -= x * std::log(x);
    }
    return s;
}

double shannon_entropy(const RealVector& p) {
    validate_probability_vector(p);
    return shannon_entropy_unchecked(p);
}

double von_neumann_entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("von_neumann_entropy: eigensolve failed");
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double x = es.eigenvalues()(i);
        if (x > 0.0) s -= x * std::log(x);
    }
    return s;
}

}  // namespace polsim
