// Quantum polarizing beamsplitter: 4x4 mode scattering matrices, truncated
// Fock-space evolution operators built from the matrix logarithm of the
// scattering matrix, and the partial-trace channel over the second port.
//
// Mode order is (a_h, a_v, b_h, b_v) throughout: two polarization modes per
// input port.

#pragma once

#include "polsim/common.hpp"

#include <vector>

namespace polsim {

// Scattering matrix at transmission amplitude t in [0,1]; the reflection
// amplitude is the non-negative root r = sqrt(1 - t^2).
Matrix pbs_scattering(double t);

// Block-diagonal polarization rotation by theta on each port.
Matrix polarization_rotation(double theta);

// R_theta S R_theta^dag : the same element with transmission axes rotated.
Matrix rotate_scattering(const Matrix& s, double theta);

// ------------------------- truncated Fock space -------------------------------

// Occupation-number basis for n_modes modes keeping total photon number
// <= max_total. States are ordered by total photon number, and within a
// number block lexicographically with the first mode most significant, so
// the one-photon block lists modes in mode order.
class FockBasis {
public:
    FockBasis(int n_modes, int max_total);

    int n_modes() const { return n_modes_; }
    int max_total() const { return max_total_; }
    int dim() const { return static_cast<int>(states_.size()); }
    const std::vector<std::vector<int>>& states() const { return states_; }

    // Index of an occupation tuple, or -1 when outside the truncation.
    int index_of(const std::vector<int>& occ) const;

    // Matrix annihilation/creation operators on this basis. Products of the
    // form a_i^dag a_j are exact within the truncation since they conserve
    // total photon number.
    Matrix annihilation(int mode) const;
    Matrix creation(int mode) const;

    int total_photons(int index) const;

private:
    int n_modes_;
    int max_total_;
    std::vector<std::vector<int>> states_;
};

// ------------------------- evolution operator ---------------------------------

// U = exp(sum_ij ln(S)_ij a_i^dag a_j) on the truncated basis. The generator
// conserves total photon number, so U is exactly block-diagonal in photon
// number and the truncation introduces no leakage. Throws on non-unitary S
// or when the basis mode count does not match S.
Matrix build_evolution_operator(const Matrix& s, const FockBasis& basis);

struct GeneratorDecomposition {
    double coeff_h = 0.0;  // sin^2(theta)
    double coeff_v = 0.0;  // cos^2(theta)
    double coeff_c = 0.0;  // sin(2 theta)
    Matrix generator;      // phi * [ch S_h + cv S_v + cc S_c] on the basis
};

// Direct construction of the evolution generator from the exchange operators
//   S_h = a_h^dag b_h - b_h^dag a_h,
//   S_v = a_v^dag b_v - b_v^dag a_v,
//   S_c = (b_v^dag a_h + b_h^dag a_v - a_v^dag b_h - a_h^dag b_v) / 2,
// with t = cos(phi). exp(generator) agrees with the matrix-log construction.
GeneratorDecomposition generator_decomposition(double theta, double phi, const FockBasis& basis);

// ------------------------- partial-trace channel -------------------------------

// State of port b with no photons, on the two-mode basis of the given cap.
Matrix vacuum_state(int max_total);

// rho_a (x) eta_b embedded into the 4-mode joint basis; the states live on
// two-mode bases whose caps are inferred from their dimensions. Throws when
// the combined photon number exceeds the joint cap.
Matrix embed_product_state(const Matrix& rho_a, const Matrix& eta_b, const FockBasis& joint);

// Partial trace over the b-modes of a joint-basis state; the result lives on
// the two-mode port-a basis with the same cap as the joint basis.
Matrix trace_out_port_b(const Matrix& sigma, const FockBasis& joint);

// tr_b { U_theta (rho_a (x) eta_b) U_theta^dag } for the beamsplitter at
// transmission t rotated by theta. rho_a and eta_b live on two-mode Fock
// bases whose caps are inferred from their dimensions; their combined photon
// number must not exceed max_total (default 2) or the call is rejected.
// The result is returned on the two-mode basis with cap max_total.
Matrix pbs_cptp(const Matrix& rho_a, double theta, double t, const Matrix& eta_b, int max_total = 2);

// Cap of a two-mode basis given its dimension (3 -> 1 photon, 6 -> 2, ...);
// throws if the dimension is not of that form.
int two_mode_cap_for_dim(Eigen::Index dim);

}  // namespace polsim
