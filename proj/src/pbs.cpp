#include "polsim/pbs.hpp"

#include "polsim/density.hpp"
#include "polsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace polsim {

Matrix pbs_scattering(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("pbs_scattering: t must lie in [0,1]");
    const double r = std::sqrt(1.0 - t * t);
    Matrix s = Matrix::Zero(4, 4);
    s(0, 0) = 1.0;
    s(1, 1) = t;
    s(1, 3) = r;
    s(2, 2) = 1.0;
    s(3, 1) = -r;
    s(3, 3) = t;
    return s;
}

Matrix polarization_rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Matrix r = Matrix::Zero(4, 4);
    for (int port = 0; port < 2; ++port) {
        const int o = 2 * port;
        r(o, o) = c;
        r(o, o + 1) = -s;
        r(o + 1, o) = s;
        r(o + 1, o + 1) = c;
    }
    return r;
}

Matrix rotate_scattering(const Matrix& s, double theta) {
    if (s.rows() != 4 || s.cols() != 4) throw std::invalid_argument("rotate_scattering: expected 4x4");
    const Matrix r = polarization_rotation(theta);
    return r * s * r.adjoint();
}

// ------------------------- truncated Fock space -------------------------------

namespace {

void enumerate_states(int n_modes, int max_total, std::vector<int>& occ, int mode, int used,
                      std::vector<std::vector<int>>& out) {
    if (mode == n_modes) {
        out.push_back(occ);
        return;
    }
    // Highest occupation first so that within a photon-number block the first
    // mode is most significant; the one-photon block then lists the modes in
    // mode order.
    for (int n = max_total - used; n >= 0; --n) {
        occ[mode] = n;
        enumerate_states(n_modes, max_total, occ, mode + 1, used + n, out);
    }
    occ[mode] = 0;
}

}  // namespace

FockBasis::FockBasis(int n_modes, int max_total) : n_modes_(n_modes), max_total_(max_total) {
    if (n_modes < 1) throw std::invalid_argument("FockBasis: need at least one mode");
    if (max_total < 0) throw std::invalid_argument("FockBasis: max_total must be >= 0");
    std::vector<std::vector<int>> all;
    std::vector<int> occ(static_cast<std::size_t>(n_modes), 0);
    enumerate_states(n_modes, max_total, occ, 0, 0, all);
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        int ta = 0, tb = 0;
        for (int x : a) ta += x;
        for (int x : b) tb += x;
        return ta < tb;
    });
    states_ = std::move(all);
}

int FockBasis::index_of(const std::vector<int>& occ) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == occ) return static_cast<int>(i);
    return -1;
}

int FockBasis::total_photons(int index) const {
    int total = 0;
    for (int x : states_.at(static_cast<std::size_t>(index))) total += x;
    return total;
}

Matrix FockBasis::annihilation(int mode) const {
    if (mode < 0 || mode >= n_modes_) throw std::invalid_argument("FockBasis: mode out of range");
    Matrix a = Matrix::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) {
        const auto& occ = states_[static_cast<std::size_t>(i)];
        if (occ[static_cast<std::size_t>(mode)] == 0) continue;
        std::vector<int> target = occ;
        target[static_cast<std::size_t>(mode)] -= 1;
        const int j = index_of(target);
        a(j, i) = std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(mode)]));
    }
    return a;
}

Matrix FockBasis::creation(int mode) const { return annihilation(mode).adjoint(); }

// ------------------------- evolution operator ---------------------------------

Matrix build_evolution_operator(const Matrix& s, const FockBasis& basis) {
    if (s.rows() != basis.n_modes() || s.cols() != basis.n_modes())
        throw std::invalid_argument("build_evolution_operator: scattering matrix does not match mode count");
    const Matrix log_s = matrix_log_unitary(s);  // rejects non-unitary input
    std::vector<Matrix> a(static_cast<std::size_t>(basis.n_modes()));
    for (int m = 0; m < basis.n_modes(); ++m) a[static_cast<std::size_t>(m)] = basis.annihilation(m);
    Matrix generator = Matrix::Zero(basis.dim(), basis.dim());
    for (int i = 0; i < basis.n_modes(); ++i)
        for (int j = 0; j < basis.n_modes(); ++j) {
            if (log_s(i, j) == cxd(0.0, 0.0)) continue;
            generator += log_s(i, j) * (a[static_cast<std::size_t>(i)].adjoint() * a[static_cast<std::size_t>(j)]);
        }
    return expm_antihermitian(generator);
}

GeneratorDecomposition generator_decomposition(double theta, double phi, const FockBasis& basis) {
    if (basis.n_modes() != 4) throw std::invalid_argument("generator_decomposition: need the 4-mode basis");
    const Matrix a_h = basis.annihilation(0), a_v = basis.annihilation(1);
    const Matrix b_h = basis.annihilation(2), b_v = basis.annihilation(3);

    const Matrix s_h = a_h.adjoint() * b_h - b_h.adjoint() * a_h;
    const Matrix s_v = a_v.adjoint() * b_v - b_v.adjoint() * a_v;
    const Matrix s_c = 0.5 * (b_v.adjoint() * a_h + b_h.adjoint() * a_v - a_v.adjoint() * b_h -
                              a_h.adjoint() * b_v);

    GeneratorDecomposition out;
    const double sn = std::sin(theta), cs = std::cos(theta);
    out.coeff_h = sn * sn;
    out.coeff_v = cs * cs;
    out.coeff_c = std::sin(2.0 * theta);
    out.generator = phi * (out.coeff_h * s_h + out.coeff_v * s_v + out.coeff_c * s_c);
    return out;
}

// ------------------------- partial-trace channel -------------------------------

int two_mode_cap_for_dim(Eigen::Index dim) {
    for (int cap = 0; cap <= 16; ++cap)
        if (static_cast<Eigen::Index>((cap + 1) * (cap + 2) / 2) == dim) return cap;
    throw std::invalid_argument("two-mode basis: dimension is not of the form (c+1)(c+2)/2");
}

Matrix vacuum_state(int max_total) {
    const FockBasis basis(2, max_total);
    Matrix eta = Matrix::Zero(basis.dim(), basis.dim());
    eta(0, 0) = 1.0;
    return eta;
}

Matrix embed_product_state(const Matrix& rho_a, const Matrix& eta_b, const FockBasis& joint) {
    const int cap_a = two_mode_cap_for_dim(rho_a.rows());
    const int cap_b = two_mode_cap_for_dim(eta_b.rows());
    if (joint.n_modes() != 4) throw std::invalid_argument("embed_product_state: need the 4-mode basis");
    if (cap_a + cap_b > joint.max_total())
        throw std::invalid_argument("embed_product_state: combined photon number exceeds the truncation cap");

    const FockBasis basis_a(2, cap_a), basis_b(2, cap_b);
    std::vector<std::vector<int>> pair_index(static_cast<std::size_t>(basis_a.dim()),
                                             std::vector<int>(static_cast<std::size_t>(basis_b.dim())));
    for (int ia = 0; ia < basis_a.dim(); ++ia)
        for (int ib = 0; ib < basis_b.dim(); ++ib) {
            std::vector<int> occ = basis_a.states()[static_cast<std::size_t>(ia)];
            const auto& ob = basis_b.states()[static_cast<std::size_t>(ib)];
            occ.insert(occ.end(), ob.begin(), ob.end());
            pair_index[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)] = joint.index_of(occ);
        }

    Matrix sigma = Matrix::Zero(joint.dim(), joint.dim());
    for (int ia = 0; ia < basis_a.dim(); ++ia)
        for (int ib = 0; ib < basis_b.dim(); ++ib)
            for (int ja = 0; ja < basis_a.dim(); ++ja)
                for (int jb = 0; jb < basis_b.dim(); ++jb)
                    sigma(pair_index[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)],
                          pair_index[static_cast<std::size_t>(ja)][static_cast<std::size_t>(jb)]) +=
                        rho_a(ia, ja) * eta_b(ib, jb);
    return sigma;
}

Matrix trace_out_port_b(const Matrix& sigma, const FockBasis& joint) {
    if (joint.n_modes() != 4) throw std::invalid_argument("trace_out_port_b: need the 4-mode basis");
    if (sigma.rows() != joint.dim() || sigma.cols() != joint.dim())
        throw std::invalid_argument("trace_out_port_b: state does not match the basis");
    const FockBasis out_basis(2, joint.max_total());
    Matrix out = Matrix::Zero(out_basis.dim(), out_basis.dim());
    for (int ia = 0; ia < out_basis.dim(); ++ia)
        for (int ja = 0; ja < out_basis.dim(); ++ja) {
            cxd sum = 0.0;
            for (int ib = 0; ib < out_basis.dim(); ++ib) {
                std::vector<int> occ_i = out_basis.states()[static_cast<std::size_t>(ia)];
                const auto& ob = out_basis.states()[static_cast<std::size_t>(ib)];
                occ_i.insert(occ_i.end(), ob.begin(), ob.end());
                std::vector<int> occ_j = out_basis.states()[static_cast<std::size_t>(ja)];
                occ_j.insert(occ_j.end(), ob.begin(), ob.end());
                const int row = joint.index_of(occ_i);
                const int col = joint.index_of(occ_j);
                if (row >= 0 && col >= 0) sum += sigma(row, col);
            }
            out(ia, ja) = sum;
        }
    return out;
}

Matrix pbs_cptp(const Matrix& rho_a, double theta, double t, const Matrix& eta_b, int max_total) {
    validate_density(rho_a);
    validate_density(eta_b);
    const FockBasis joint(4, max_total);
    const Matrix sigma = embed_product_state(rho_a, eta_b, joint);
    const Matrix u = build_evolution_operator(rotate_scattering(pbs_scattering(t), theta), joint);
    return hermitize(trace_out_port_b(u * sigma * u.adjoint(), joint));
}

}  // namespace polsim
