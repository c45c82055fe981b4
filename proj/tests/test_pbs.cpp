#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polsim/density.hpp"
#include "polsim/linalg.hpp"
#include "polsim/pbs.hpp"
#include "polsim/rng.hpp"

#include <cmath>
#include <numbers>

using namespace polsim;

namespace {

Matrix random_density(int dim, Rng& rng) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return hermitize(rho);
}

}  // namespace

TEST_CASE("scattering matrix endpoints and unitarity") {
    CHECK(max_abs(pbs_scattering(1.0) - Matrix::Identity(4, 4)) < 1e-15);

    const Matrix s0 = pbs_scattering(0.0);  // full reflection of the v modes
    CHECK(s0(1, 3) == cxd(1.0, 0.0));
    CHECK(s0(3, 1) == cxd(-1.0, 0.0));
    CHECK(s0(1, 1) == cxd(0.0, 0.0));

    Rng rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const Matrix s = pbs_scattering(rng.uniform());
        CHECK(max_abs(s.adjoint() * s - Matrix::Identity(4, 4)) < 1e-14);
    }
    CHECK_THROWS_AS(pbs_scattering(1.5), std::invalid_argument);
    CHECK_THROWS_AS(pbs_scattering(-0.1), std::invalid_argument);
}

TEST_CASE("rotated scattering matrix") {
    const Matrix s = pbs_scattering(0.8);
    CHECK(max_abs(rotate_scattering(s, 0.0) - s) < 1e-15);

    // Direct 4x4 multiplication oracle.
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const double theta = 4.0 * (rng.uniform() - 0.5);
        const Matrix r = polarization_rotation(theta);
        CHECK(max_abs(rotate_scattering(s, theta) - r * s * r.adjoint()) < 1e-14);
        CHECK(is_unitary(rotate_scattering(s, theta), 1e-14));
    }

    // At theta = pi/2 the roles of h and v are exchanged up to signs: the
    // coupled pair moves to the h modes.
    const Matrix s90 = rotate_scattering(s, std::numbers::pi / 2.0);
    CHECK(std::abs(s90(0, 0).real() - 0.8) < 1e-12);
    CHECK(std::abs(s90(1, 1).real() - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(s90(0, 2)) - 0.6) < 1e-12);
}

TEST_CASE("Fock basis enumeration and operators") {
    const FockBasis basis(4, 2);
    CHECK(basis.dim() == 15);
    // One-photon block lists modes in mode order right after the vacuum.
    for (int mode = 0; mode < 4; ++mode) {
        std::vector<int> occ(4, 0);
        occ[static_cast<std::size_t>(mode)] = 1;
        CHECK(basis.index_of(occ) == 1 + mode);
    }
    CHECK(basis.index_of({0, 0, 0, 3}) == -1);

    // Commutator [a, a^dag] = 1 on the interior (not the top block).
    const Matrix a = basis.annihilation(2);
    const Matrix comm = a * a.adjoint() - a.adjoint() * a;
    for (int i = 0; i < 5; ++i) CHECK(std::abs(comm(i, i) - cxd(1.0, 0.0)) < 1e-14);
}

TEST_CASE("evolution operator: identity, one-photon block, Heisenberg relation") {
    const FockBasis basis(4, 2);
    CHECK(max_abs(build_evolution_operator(Matrix::Identity(4, 4), basis) -
                  Matrix::Identity(15, 15)) < 1e-12);

    Rng rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        const double theta = 3.0 * (rng.uniform() - 0.5);
        const double phi = 0.5 * std::numbers::pi * rng.uniform();
        const Matrix s = rotate_scattering(pbs_scattering(std::cos(phi)), theta);
        const Matrix u = build_evolution_operator(s, basis);

        CHECK(is_unitary(u, 1e-10));
        // The single-photon block of U is the scattering matrix itself.
        CHECK(max_abs(u.block(1, 1, 4, 4) - s) < 1e-10);
        // U is block-diagonal in total photon number.
        for (int i = 0; i < basis.dim(); ++i)
            for (int j = 0; j < basis.dim(); ++j)
                if (basis.total_photons(i) != basis.total_photons(j))
                    CHECK(std::abs(u(i, j)) < 1e-13);
        // U^dag a_k U = sum_j S_kj a_j within the truncation.
        for (int k = 0; k < 4; ++k) {
            const Matrix lhs = u.adjoint() * basis.annihilation(k) * u;
            Matrix rhs = Matrix::Zero(basis.dim(), basis.dim());
            for (int j = 0; j < 4; ++j) rhs += s(k, j) * basis.annihilation(j);
            CHECK(max_abs(lhs - rhs) < 1e-10);
        }
    }
    CHECK_THROWS_AS(build_evolution_operator(2.0 * Matrix::Identity(4, 4), basis),
                    std::invalid_argument);
}

TEST_CASE("generator decomposition against the matrix-log construction") {
    const FockBasis basis(4, 2);

    // theta = 0 leaves only the v-exchange generator.
    const auto g0 = generator_decomposition(0.0, 0.7, basis);
    CHECK(g0.coeff_h == doctest::Approx(0.0));
    CHECK(g0.coeff_c == doctest::Approx(0.0));
    const Matrix a_v = basis.annihilation(1), b_v = basis.annihilation(3);
    CHECK(max_abs(g0.generator - 0.7 * (a_v.adjoint() * b_v - b_v.adjoint() * a_v)) < 1e-14);

    // theta = pi/2 leaves only the h-exchange generator.
    const auto g90 = generator_decomposition(std::numbers::pi / 2.0, 0.7, basis);
    CHECK(g90.coeff_v == doctest::Approx(0.0).epsilon(1e-12));
    const Matrix a_h = basis.annihilation(0), b_h = basis.annihilation(2);
    CHECK(max_abs(g90.generator - 0.7 * (a_h.adjoint() * b_h - b_h.adjoint() * a_h)) < 1e-12);

    Rng rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        const double theta = 3.0 * (rng.uniform() - 0.5);
        const double phi = 0.5 * std::numbers::pi * rng.uniform();
        const Matrix via_log =
            build_evolution_operator(rotate_scattering(pbs_scattering(std::cos(phi)), theta), basis);
        const Matrix via_generator = expm_antihermitian(generator_decomposition(theta, phi, basis).generator);
        CHECK(max_abs(via_log - via_generator) < 1e-9);
    }
}

TEST_CASE("beamsplitter channel basics") {
    const Matrix vac = vacuum_state(1);

    // Vacuum in, vacuum out.
    const Matrix out = pbs_cptp(vac, 0.3, 0.7, vac);
    CHECK(std::abs(out(0, 0).real() - 1.0) < 1e-12);

    // theta = 0, t = 1 is the identity channel on the one-photon subspace.
    Rng rng(13);
    const Matrix rho = random_density(3, rng);
    const Matrix id_out = pbs_cptp(rho, 0.0, 1.0, vac);
    CHECK(max_abs(id_out.block(0, 0, 3, 3) - rho) < 1e-12);

    // Trace preservation and one-photon closure for random parameters.
    for (int rep = 0; rep < 25; ++rep) {
        const Matrix r = random_density(3, rng);
        const double theta = 3.0 * (rng.uniform() - 0.5);
        const double t = rng.uniform();
        const Matrix o = pbs_cptp(r, theta, t, vac);
        CHECK(std::abs(o.trace().real() - 1.0) < 1e-12);
        CHECK_NOTHROW(validate_density(o));
        // No population leaks into the two-photon sector.
        for (int i = 3; i < 6; ++i) CHECK(std::abs(o(i, i)) < 1e-14);
    }

    // Combined photon number beyond the cap is rejected.
    const Matrix big = Matrix::Identity(6, 6) / 6.0;
    CHECK_THROWS_AS(pbs_cptp(big, 0.0, 0.9, vacuum_state(1)), std::invalid_argument);
}

TEST_CASE("Schroedinger and Heisenberg expectation values agree") {
    const FockBasis basis(4, 2);
    Rng rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        const double theta = 3.0 * (rng.uniform() - 0.5);
        const double t = rng.uniform();
        const Matrix s = rotate_scattering(pbs_scattering(t), theta);
        const Matrix u = build_evolution_operator(s, basis);
        const Matrix state = random_density(basis.dim(), rng);  // spans <= 2 photon sectors
        const Matrix evolved = u * state * u.adjoint();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const Matrix number_op = basis.creation(i) * basis.annihilation(j);
                const cxd lhs = (evolved * number_op).trace();
                // Heisenberg route: <a_i^dag a_j> -> sum_kl S*_ik S_jl <a_k^dag a_l>.
                cxd rhs = 0.0;
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l)
                        rhs += std::conj(s(i, k)) * s(j, l) *
                               (state * (basis.creation(k) * basis.annihilation(l))).trace();
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
    }
}

TEST_CASE("small-phi channel matches the commutator generator to second order") {
    const FockBasis joint(4, 2);
    Rng rng(19);
    const Matrix rho = random_density(3, rng);
    const Matrix eta = vacuum_state(1);
    const double theta = 0.4;

    const Matrix h_theta = generator_decomposition(theta, 1.0, joint).generator;
    const Matrix sigma = embed_product_state(rho, eta, joint);
    const Matrix commutator = h_theta * sigma - sigma * h_theta;
    const Matrix drift = trace_out_port_b(commutator, joint);

    std::vector<double> ratios;
    for (double phi : {1e-2, 1e-3, 1e-4}) {
        const Matrix stepped = pbs_cptp(rho, theta, std::cos(phi), eta);
        Matrix linear = Matrix::Zero(6, 6);
        linear.block(0, 0, 3, 3) = rho;
        linear += phi * drift;
        const double err = max_abs(stepped - linear);
        ratios.push_back(err / (phi * phi));
    }
    // Second-order convergence: the fitted quadratic coefficient is stable.
    for (double r : ratios) {
        CHECK(r < 3.0 * ratios[1]);
        CHECK(r > ratios[1] / 3.0);
    }
}
