#include "polsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace polsim {

double Rng::normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Matrix haar_unitary(int dim, Rng& rng) {
    Matrix z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) z(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        cxd d = r(j, j);
        q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : cxd(1.0, 0.0);
    }
    return q;
}

}  // namespace polsim
