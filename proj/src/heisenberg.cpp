#include "polsim/heisenberg.hpp"

#include "polsim/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polsim {

double chi(double temperature_ratio) {
    if (temperature_ratio < 0.0) throw std::invalid_argument("chi: temperature ratio must be >= 0");
    return 0.5 * (-std::expm1(-2.0 * temperature_ratio));
}

AveragedScattering averaged_scattering(double t, double temperature_ratio) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("averaged_scattering: t must lie in [0,1]");
    const double x = chi(temperature_ratio);
    const double r = std::sqrt(1.0 - t * t);
    AveragedScattering out;
    out.chi = x;
    out.t = t;
    RealMatrix m = RealMatrix::Zero(4, 4);
    m(0, 0) = 1.0 - (1.0 - t) * x;
    m(0, 2) = r * x;
    m(1, 1) = t + (1.0 - t) * x;
    m(1, 3) = r - r * x;
    m(2, 0) = -r * x;
    m(2, 2) = 1.0 - (1.0 - t) * x;
    m(3, 1) = r * x - r;
    m(3, 3) = t + (1.0 - t) * x;
    out.matrix = m;
    return out;
}

double modified_commutator(double t, double chi_value) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("modified_commutator: t must lie in [0,1]");
    if (!(chi_value >= 0.0 && chi_value <= 0.5))
        throw std::invalid_argument("modified_commutator: chi must lie in [0, 1/2]");
    return 1.0 - 2.0 * (1.0 - t) * (chi_value - chi_value * chi_value);
}

ScatteringSample averaged_scattering_monte_carlo(double t, double temperature_ratio, long samples,
                                                 std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("averaged_scattering_monte_carlo: need samples >= 2");
    const double stddev = std::sqrt(temperature_ratio);
    const Matrix s0 = pbs_scattering(t);
    RealMatrix sum = RealMatrix::Zero(4, 4), sum_sq = RealMatrix::Zero(4, 4);
    for (long n = 0; n < samples; ++n) {
        Rng rng(seed, static_cast<std::uint64_t>(n));
        const double theta = stddev * rng.normal();
        const RealMatrix s = rotate_scattering(s0, theta).real();
        sum += s;
        sum_sq += s.cwiseProduct(s);
    }
    ScatteringSample out;
    const double n_d = static_cast<double>(samples);
    out.mean = sum / n_d;
    out.standard_error =
        ((sum_sq / n_d - out.mean.cwiseProduct(out.mean)).cwiseMax(0.0) / (n_d - 1.0)).cwiseSqrt();
    return out;
}

Quadrature gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
    RealMatrix jacobi = RealMatrix::Zero(order, order);
    for (int i = 0; i + 1 < order; ++i) {
        const double v = std::sqrt(0.5 * static_cast<double>(i + 1));
        jacobi(i, i + 1) = v;
        jacobi(i + 1, i) = v;
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(jacobi);
    if (es.info() != Eigen::Success) throw std::runtime_error("gauss_hermite: eigensolve failed");
    Quadrature q;
    q.nodes.resize(static_cast<std::size_t>(order));
    q.weights.resize(static_cast<std::size_t>(order));
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    for (int i = 0; i < order; ++i) {
        q.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double first = es.eigenvectors()(0, i);
        q.weights[static_cast<std::size_t>(i)] = sqrt_pi * first * first;
    }
    return q;
}

double gaussian_expectation(const std::function<double(double)>& f, double mean, double variance,
                            int order) {
    const Quadrature q = gauss_hermite(order);
    const double scale = std::sqrt(2.0 * variance);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        acc += q.weights[i] * f(mean + scale * q.nodes[i]);
    return acc / std::sqrt(std::numbers::pi);
}

TransferTensor quadratic_transfer(double t, double temperature_ratio, int quadrature_order) {
    const Quadrature q = gauss_hermite(quadrature_order);
    const double scale = std::sqrt(2.0 * temperature_ratio);
    const double norm = 1.0 / std::sqrt(std::numbers::pi);
    const Matrix s0 = pbs_scattering(t);
    TransferTensor tensor;
    for (std::size_t m = 0; m < q.nodes.size(); ++m) {
        const double theta = scale * q.nodes[m];
        const RealMatrix s = rotate_scattering(s0, theta).real();
        const double w = q.weights[m] * norm;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) tensor.at(i, j, k, l) += w * s(i, k) * s(j, l);
    }
    return tensor;
}

Matrix evolve_quadratic_observable(const TransferTensor& tensor, const RealMatrix& coefficients,
                                   const FockBasis& basis) {
    if (coefficients.rows() != 4 || coefficients.cols() != 4)
        throw std::invalid_argument("evolve_quadratic_observable: expected 4x4 coefficients");
    if (basis.n_modes() != 4)
        throw std::invalid_argument("evolve_quadratic_observable: need the 4-mode basis");
    RealMatrix evolved = RealMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (coefficients(i, j) == 0.0) continue;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    evolved(k, l) += coefficients(i, j) * tensor.at(i, j, k, l);
        }
    Matrix out = Matrix::Zero(basis.dim(), basis.dim());
    for (int k = 0; k < 4; ++k) {
        const Matrix ck = basis.creation(k);
        for (int l = 0; l < 4; ++l) {
            if (evolved(k, l) == 0.0) continue;
            out += evolved(k, l) * (ck * basis.annihilation(l));
        }
    }
    return out;
}

Matrix averaged_channel(const Matrix& sigma, double t, double temperature_ratio,
                        const FockBasis& basis, int quadrature_order) {
    if (sigma.rows() != basis.dim() || sigma.cols() != basis.dim())
        throw std::invalid_argument("averaged_channel: state does not match the basis");
    const Quadrature q = gauss_hermite(quadrature_order);
    const double scale = std::sqrt(2.0 * temperature_ratio);
    const double norm = 1.0 / std::sqrt(std::numbers::pi);
    const Matrix s0 = pbs_scattering(t);
    Matrix out = Matrix::Zero(basis.dim(), basis.dim());
    for (std::size_t m = 0; m < q.nodes.size(); ++m) {
        const double theta = scale * q.nodes[m];
        const Matrix u = build_evolution_operator(rotate_scattering(s0, theta), basis);
        out += (q.weights[m] * norm) * (u * sigma * u.adjoint());
    }
    return out;
}

}  // namespace polsim
