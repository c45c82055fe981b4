// Ensemble-averaged Heisenberg picture of a beamsplitter whose rotation
// angle is thermal: the averaged scattering matrix, the decoherence
// parameter chi, modified commutators of the evolved mode operators, and
// the transfer tensor for number-conserving quadratic observables.

#pragma once

#include "polsim/common.hpp"
#include "polsim/pbs.hpp"
#include "polsim/rng.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace polsim {

// Gaussian average of sin^2(theta) at variance k_B T / kappa:
// chi = (1 - exp(-2 k_B T / kappa)) / 2, in [0, 1/2).
double chi(double temperature_ratio);

struct AveragedScattering {
    RealMatrix matrix;  // 4x4, generally not unitary
    double chi = 0.0;
    double t = 1.0;
};

// Closed form of E_theta[R_theta S R_theta^dag] over the thermal angle
// distribution; entries are built from t, r and chi.
AveragedScattering averaged_scattering(double t, double temperature_ratio);

// [a', a'^dag] = 1 - 2 (1 - t)(chi - chi^2) for both polarization modes.
double modified_commutator(double t, double chi_value);

// Monte Carlo estimate of the averaged scattering matrix, with elementwise
// standard errors; an oracle for the closed form.
struct ScatteringSample {
    RealMatrix mean;
    RealMatrix standard_error;
};
ScatteringSample averaged_scattering_monte_carlo(double t, double temperature_ratio, long samples,
                                                 std::uint64_t seed);

// Gauss-Hermite nodes/weights for integrals against exp(-x^2); computed by
// Golub-Welsch on the Jacobi matrix.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_hermite(int order);

// E_theta[f(theta)] for theta ~ N(mean, variance) using Gauss-Hermite.
double gaussian_expectation(const std::function<double(double)>& f, double mean, double variance,
                            int order = 64);

// Rank-4 transfer tensor T^{ij}_{kl} = E_theta[S*_{theta,ik} S_{theta,jl}]:
// the adjoint channel maps x_i^dag x_j to sum_kl T^{ij}_{kl} x_k^dag x_l.
class TransferTensor {
public:
    TransferTensor() : data_{} {}
    double& at(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
    double at(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }

private:
    static std::size_t index(int i, int j, int k, int l) {
        return static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l);
    }
    std::array<double, 256> data_;
};

TransferTensor quadratic_transfer(double t, double temperature_ratio, int quadrature_order = 64);

// Heisenberg-evolved observable sum_ij X_ij x_i^dag x_j on the Fock basis,
// using the transfer tensor.
Matrix evolve_quadratic_observable(const TransferTensor& tensor, const RealMatrix& coefficients,
                                   const FockBasis& basis);

// Schroedinger-side channel: E_theta[U_theta sigma U_theta^dag] by the same
// Gauss-Hermite rule, for duality checks against the adjoint route.
Matrix averaged_channel(const Matrix& sigma, double t, double temperature_ratio,
                        const FockBasis& basis, int quadrature_order = 64);

}  // namespace polsim
