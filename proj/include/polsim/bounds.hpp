// Closed-form dissipation bounds for noisy polarizers, plus two numerical
// verifiers: a momentum-random-walk simulation for the semiclassical
// beamsplitter bound and a small-bath sampler for the purity bound.
//
// Sign convention: every evaluator takes the erasure as a non-negative
// number, erasure = -(delta s) >= 0 for an entropy decrease. Temperatures
// are energies (k_B T); natural units hbar = k_B = c = 1 unless a command
// documents otherwise.

#pragma once

#include "polsim/common.hpp"
#include "polsim/rng.hpp"

#include <cstdint>
#include <vector>

namespace polsim {

// ------------------------- absorbing linear polarizer ------------------------

struct AlpClassicalInput {
    double erasure = 0.0;      // nats
    double temperature = 1.0;  // k_B T_P, energy units, > 0
};

// k_B T_P (e^{erasure} - 1)
double alp_classical_heat_bound(const AlpClassicalInput& in);

struct AlpQuantumInput {
    double erasure = 0.0;      // nats (Wigner-entropy decrease)
    double temperature = 1.0;  // k_B T >= 0
    double hbar_omega = 1.0;   // > 0
};

// (hw/2) coth(hw / 2 k_B T) (e^{erasure} - 1); the T=0 limit uses coth -> 1.
double alp_quantum_heat_bound(const AlpQuantumInput& in);

// Differential (small-erasure) forms: heat rate per unit entropy decrease,
// multiplied by minus_ds. The quantum form keeps the hw/2 prefactor obtained
// by differentiating the finite bound.
double alp_classical_differential(double temperature, double minus_ds);
double alp_quantum_differential(double temperature, double hbar_omega, double minus_ds);

// ------------------------- polarizing beamsplitter ---------------------------

struct PbsSemiclassicalInput {
    double hbar_omega = 1.0;   // photon energy
    double mass_energy = 1.0;  // m c^2
    double temperature = 1.0;  // k_B T >= 0
    double minus_ds = 0.0;     // nats
};

// (hw)^2 / (2 (mc^2)^2) * k_B T * minus_ds
double pbs_semiclassical_heat_bound(const PbsSemiclassicalInput& in);

// The derivation assumes hw << mc^2; true when the ratio exceeds 0.1.
bool pbs_semiclassical_validity_warning(const PbsSemiclassicalInput& in);

struct PbsQuantumInput {
    int bath_qubits = 1;   // N >= 1
    double epsilon = 0.0;  // gate error, >= 0
};

// (1 - 2 sqrt(2) eps)^2 / (N 2^N) for eps < 1/(2 sqrt 2), else 0.
double pbs_quantum_purity_bound(const PbsQuantumInput& in);

// Continuous-N extension of the same expression, for sweeps over a mass-like
// parameter that is not an integer qubit count.
double pbs_quantum_purity_bound_continuous(double bath_qubits, double epsilon);

// ------------------------- Gaussian max-entropy bound -------------------------

struct GaussianMoments {
    RealMatrix covariance;  // symmetric positive semidefinite, D x D
};

// (1/2) ln((2 pi e)^D |Sigma|); -inf for singular covariance.
double gaussian_entropy_upper_bound(const GaussianMoments& in);

// ------------------------- momentum random walk ------------------------------

struct MomentumWalkResult {
    std::vector<long> photon_counts;
    std::vector<double> entropy_change;  // Gaussian-fit entropy minus initial
    std::vector<double> standard_error;  // batch-based Monte Carlo error
    std::vector<double> closed_form;     // (1/2) ln(1 + dp^2 N / (4 m k_B T))
    std::vector<double> kick_variance;   // sample variance of the summed kicks
};

// Simulates the binomial reflection process on top of an initial Gaussian
// momentum of variance m k_B T: each photon adds a kick delta_p with
// probability 1/2. Entropy is the differential entropy of a Gaussian fitted
// to the sample variance. Checkpoints must be increasing.
MomentumWalkResult simulate_pbs_momentum_walk(const std::vector<long>& checkpoints,
                                              const PbsSemiclassicalInput& in, double delta_p,
                                              long n_samples, std::uint64_t seed, int n_batches = 20);

// ------------------------- small-bath purity verifier ------------------------

struct PurityTrial {
    double epsilon = 0.0;        // Hilbert-Schmidt distance from the ideal CNOT output
    double purity_before = 0.0;  // tr rho_B^2
    double purity_after = 0.0;   // tr rho_B'^2
    double bound = 0.0;          // guaranteed minimal purity loss
    bool bound_satisfied = false;
    bool assumption_held = false;  // purity(rho_B^i) <= purity(rho_B) for i = 0, 1
};

struct PurityReport {
    std::vector<PurityTrial> trials;
    long n_bound_satisfied = 0;
    long n_assumption_held = 0;
    long n_violations_with_assumption = 0;
};

// Unitary on n_qubits qubits, block Haar-random within each eigenspace of the
// total Z operator (fixed Hamming weight), so the conservation law holds
// exactly.
Matrix z_conserving_unitary(int n_qubits, Rng& rng);

// Evaluates one trial for a given joint unitary on (2 system qubits) x
// (n_bath qubits). System input is the separable 1/2(|00><00| + |10><10|)
// tensor rho_bath.
PurityTrial purity_trial_for_unitary(const Matrix& u, int n_bath, const Matrix& rho_bath);

// Samples `trials` Z-conserving unitaries. rho_bath defaults to |0...0>.
PurityReport verify_purity_bound_small_bath(int n_bath, long trials, std::uint64_t seed,
                                            const Matrix* rho_bath = nullptr);

}  // namespace polsim
