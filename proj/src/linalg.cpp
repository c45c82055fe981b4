#include "polsim/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace polsim {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix partial_trace(const Matrix& rho, int dim_a, int dim_b, int traced) {
    if (dim_a <= 0 || dim_b <= 0) throw std::invalid_argument("partial_trace: dims must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
    if (rho.rows() != n || rho.cols() != n)
        throw std::invalid_argument("partial_trace: dims do not multiply to the state dimension");
    if (traced != 0 && traced != 1) throw std::invalid_argument("partial_trace: traced must be 0 or 1");

    if (traced == 1) {  // keep A
        Matrix out = Matrix::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int k = 0; k < dim_a; ++k) {
                cxd sum = 0.0;
                for (int b = 0; b < dim_b; ++b) sum += rho(i * dim_b + b, k * dim_b + b);
                out(i, k) = sum;
            }
        return out;
    }
    Matrix out = Matrix::Zero(dim_b, dim_b);  // keep B
    for (int i = 0; i < dim_b; ++i)
        for (int k = 0; k < dim_b; ++k) {
            cxd sum = 0.0;
            for (int a = 0; a < dim_a; ++a) sum += rho(a * dim_b + i, a * dim_b + k);
            out(i, k) = sum;
        }
    return out;
}

Matrix matrix_log_unitary(const Matrix& s, double tolerance) {
    if (!is_unitary(s, tolerance)) throw std::invalid_argument("matrix_log_unitary: input is not unitary");
    // A unitary is normal, so its Schur form is diagonal up to round-off and
    // the Schur vectors form a unitary eigenbasis.
    Eigen::ComplexSchur<Matrix> schur(s);
    const Matrix& q = schur.matrixU();
    const Matrix& t = schur.matrixT();
    Matrix logdiag = Matrix::Zero(s.rows(), s.cols());
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        // Eigenvalue on the unit circle; principal branch phase in (-pi, pi].
        logdiag(i, i) = cxd(0.0, std::arg(t(i, i)));
    }
    Matrix out = q * logdiag * q.adjoint();
    // The exact logarithm is anti-Hermitian; project out round-off drift.
    return 0.5 * (out - out.adjoint());
}

Matrix expm_antihermitian(const Matrix& g) {
    const Matrix h = cxd(0.0, 1.0) * g;  // Hermitian
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("expm_antihermitian: eigensolve failed");
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(cxd(0.0, -es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace polsim
