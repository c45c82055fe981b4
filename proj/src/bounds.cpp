#include "polsim/bounds.hpp"

#include "polsim/density.hpp"
#include "polsim/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace polsim {

namespace {

double coth_half_ratio(double hbar_omega, double temperature) {
    // coth(hw / 2 k_B T), with the T -> 0 limit equal to 1.
    if (temperature <= 0.0) return 1.0;
    const double x = hbar_omega / (2.0 * temperature);
    if (x > 350.0) return 1.0;  // tanh saturates; avoids overflow in cosh/sinh
    return 1.0 / std::tanh(x);
}

}  // namespace

double alp_classical_heat_bound(const AlpClassicalInput& in) {
    if (in.temperature <= 0.0) throw std::invalid_argument("alp_classical_heat_bound: temperature must be > 0");
    return in.temperature * std::expm1(in.erasure);
}

double alp_quantum_heat_bound(const AlpQuantumInput& in) {
    if (in.hbar_omega <= 0.0) throw std::invalid_argument("alp_quantum_heat_bound: hbar_omega must be > 0");
    if (in.temperature < 0.0) throw std::invalid_argument("alp_quantum_heat_bound: temperature must be >= 0");
    return 0.5 * in.hbar_omega * coth_half_ratio(in.hbar_omega, in.temperature) * std::expm1(in.erasure);
}

double alp_classical_differential(double temperature, double minus_ds) {
    return temperature * minus_ds;
}

double alp_quantum_differential(double temperature, double hbar_omega, double minus_ds) {
    return 0.5 * hbar_omega * coth_half_ratio(hbar_omega, temperature) * minus_ds;
}

double pbs_semiclassical_heat_bound(const PbsSemiclassicalInput& in) {
    if (in.hbar_omega < 0.0 || in.mass_energy <= 0.0 || in.temperature < 0.0 || in.minus_ds < 0.0)
        throw std::invalid_argument("pbs_semiclassical_heat_bound: invalid input");
    const double ratio = in.hbar_omega / in.mass_energy;
    return 0.5 * ratio * ratio * in.temperature * in.minus_ds;
}

bool pbs_semiclassical_validity_warning(const PbsSemiclassicalInput& in) {
    return in.hbar_omega / in.mass_energy > 0.1;
}

double pbs_quantum_purity_bound_continuous(double bath_qubits, double epsilon) {
    if (bath_qubits < 1.0) throw std::invalid_argument("pbs_quantum_purity_bound: need at least one bath qubit");
    if (epsilon < 0.0) throw std::invalid_argument("pbs_quantum_purity_bound: epsilon must be >= 0");
    const double margin = 1.0 - 2.0 * std::numbers::sqrt2 * epsilon;
    if (margin <= 0.0) return 0.0;
    return margin * margin / (bath_qubits * std::exp2(bath_qubits));
}

double pbs_quantum_purity_bound(const PbsQuantumInput& in) {
    return pbs_quantum_purity_bound_continuous(static_cast<double>(in.bath_qubits), in.epsilon);
}

double gaussian_entropy_upper_bound(const GaussianMoments& in) {
    const RealMatrix& sigma = in.covariance;
    if (sigma.rows() != sigma.cols() || sigma.rows() == 0)
        throw std::invalid_argument("gaussian_entropy_upper_bound: covariance must be square");
    if (max_abs(sigma.cast<cxd>() - sigma.transpose().cast<cxd>()) > 1e-10)
        throw std::invalid_argument("gaussian_entropy_upper_bound: covariance must be symmetric");
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sigma, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12)
        throw std::invalid_argument("gaussian_entropy_upper_bound: covariance must be PSD");
    const double d = static_cast<double>(sigma.rows());
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double ev = es.eigenvalues()(i);
        if (ev <= 0.0) return -std::numeric_limits<double>::infinity();  // singular covariance
        log_det += std::log(ev);
    }
    return 0.5 * (d * std::log(2.0 * std::numbers::pi * std::numbers::e) + log_det);
}

// ------------------------- momentum random walk ------------------------------

namespace {

// Number of heads in `n` fair coin flips, drawn exactly by popcount over the
// generator's raw 64-bit words.
long binomial_half(long n, Rng& rng) {
    long heads = 0;
    while (n >= 64) {
        heads += std::popcount(rng.next_u64());
        n -= 64;
    }
    if (n > 0) {
        const std::uint64_t word = rng.next_u64() >> (64 - n);
        heads += std::popcount(word);
    }
    return heads;
}

}  // namespace

MomentumWalkResult simulate_pbs_momentum_walk(const std::vector<long>& checkpoints,
                                              const PbsSemiclassicalInput& in, double delta_p,
                                              long n_samples, std::uint64_t seed, int n_batches) {
    if (n_samples <= 0) throw std::invalid_argument("momentum walk: need samples");
    if (n_batches < 2) throw std::invalid_argument("momentum walk: need at least two batches");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 0 || (i > 0 && checkpoints[i] <= checkpoints[i - 1]))
            throw std::invalid_argument("momentum walk: checkpoints must be increasing and non-negative");
    }

    const double base_var = in.mass_energy * in.temperature;  // m k_B T with c = 1
    const double sigma0 = std::sqrt(base_var);

    std::vector<double> p0(n_samples), p(n_samples);
    for (long i = 0; i < n_samples; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i), 0);
        p0[i] = sigma0 * rng.normal();
        p[i] = p0[i];
    }

    MomentumWalkResult out;
    long done = 0;
    std::uint64_t stage = 1;
    for (long target : checkpoints) {
        const long step = target - done;
        for (long i = 0; i < n_samples; ++i) {
            Rng rng(seed, static_cast<std::uint64_t>(i), stage);
            p[i] += delta_p * static_cast<double>(binomial_half(step, rng));
        }
        done = target;
        ++stage;

        // Gaussian-fit entropy change, batched for a distribution-free error
        // estimate: delta s = (1/2) ln(var_N / var_0) per batch.
        std::vector<double> batch_vals;
        double kick_mean = 0.0, kick_m2 = 0.0;
        long count = 0;
        for (long i = 0; i < n_samples; ++i) {
            const double kick = p[i] - p0[i];
            ++count;
            const double d = kick - kick_mean;
            kick_mean += d / static_cast<double>(count);
            kick_m2 += d * (kick - kick_mean);
        }
        const long batch_size = n_samples / n_batches;
        for (int b = 0; b < n_batches; ++b) {
            const long lo = b * batch_size;
            const long hi = (b == n_batches - 1) ? n_samples : lo + batch_size;
            double mN = 0.0, m2N = 0.0, m0 = 0.0, m20 = 0.0;
            long c = 0;
            for (long i = lo; i < hi; ++i) {
                ++c;
                double d = p[i] - mN;
                mN += d / static_cast<double>(c);
                m2N += d * (p[i] - mN);
                d = p0[i] - m0;
                m0 += d / static_cast<double>(c);
                m20 += d * (p0[i] - m0);
            }
            batch_vals.push_back(0.5 * std::log((m2N / static_cast<double>(c - 1)) /
                                                (m20 / static_cast<double>(c - 1))));
        }
        double mean = 0.0;
        for (double v : batch_vals) mean += v;
        mean /= static_cast<double>(n_batches);
        double var = 0.0;
        for (double v : batch_vals) var += (v - mean) * (v - mean);
        var /= static_cast<double>(n_batches - 1);

        out.photon_counts.push_back(target);
        out.entropy_change.push_back(mean);
        out.standard_error.push_back(std::sqrt(var / static_cast<double>(n_batches)));
        out.closed_form.push_back(
            0.5 * std::log1p(delta_p * delta_p * static_cast<double>(target) / (4.0 * base_var)));
        out.kick_variance.push_back(kick_m2 / static_cast<double>(n_samples - 1));
    }
    return out;
}

// ------------------------- small-bath purity verifier ------------------------

Matrix z_conserving_unitary(int n_qubits, Rng& rng) {
    const int dim = 1 << n_qubits;
    std::map<int, std::vector<int>> sectors;  // Hamming weight -> basis indices
    for (int idx = 0; idx < dim; ++idx) sectors[std::popcount(static_cast<unsigned>(idx))].push_back(idx);
    Matrix u = Matrix::Zero(dim, dim);
    for (const auto& [weight, idxs] : sectors) {
        const Matrix block = haar_unitary(static_cast<int>(idxs.size()), rng);
        for (std::size_t a = 0; a < idxs.size(); ++a)
            for (std::size_t b = 0; b < idxs.size(); ++b)
                u(idxs[a], idxs[b]) = block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
    return u;
}

namespace {

Matrix ideal_cnot_output() {
    // CNOT on 1/2(|00><00| + |10><10|), qubit order (control, target).
    Matrix out = Matrix::Zero(4, 4);
    out(0, 0) = 0.5;
    out(3, 3) = 0.5;
    return out;
}

}  // namespace

PurityTrial purity_trial_for_unitary(const Matrix& u, int n_bath, const Matrix& rho_bath) {
    const int dim_bath = 1 << n_bath;
    const int dim = 4 * dim_bath;
    if (u.rows() != dim || u.cols() != dim)
        throw std::invalid_argument("purity trial: unitary dimension mismatch");
    if (rho_bath.rows() != dim_bath || rho_bath.cols() != dim_bath)
        throw std::invalid_argument("purity trial: bath dimension mismatch");

    Matrix rho_sys = Matrix::Zero(4, 4);
    rho_sys(0, 0) = 0.5;  // |00><00|
    rho_sys(2, 2) = 0.5;  // |10><10|

    const Matrix joint = u * kron(rho_sys, rho_bath) * u.adjoint();
    const Matrix rho_s_out = partial_trace(joint, 4, dim_bath, 1);
    const Matrix rho_b_out = partial_trace(joint, 4, dim_bath, 0);

    PurityTrial trial;
    const Matrix diff = rho_s_out - ideal_cnot_output();
    trial.epsilon = std::sqrt(std::max(0.0, (diff * diff).trace().real()));
    trial.purity_before = purity(rho_bath);
    trial.purity_after = purity(rho_b_out);
    trial.bound = pbs_quantum_purity_bound({n_bath, trial.epsilon});
    trial.bound_satisfied = trial.purity_after <= trial.purity_before - trial.bound + 1e-10;

    trial.assumption_held = true;
    for (int i : {0, 2}) {  // control 0 and 1, target 0
        Matrix branch = Matrix::Zero(4, 4);
        branch(i, i) = 1.0;
        const Matrix rb = partial_trace(u * kron(branch, rho_bath) * u.adjoint(), 4, dim_bath, 0);
        if (purity(rb) > trial.purity_before + 1e-10) trial.assumption_held = false;
    }
    return trial;
}

PurityReport verify_purity_bound_small_bath(int n_bath, long trials, std::uint64_t seed,
                                            const Matrix* rho_bath) {
    if (n_bath < 1 || n_bath > 3)
        throw std::invalid_argument("verify_purity_bound_small_bath: bath size must be 1..3");
    const int dim_bath = 1 << n_bath;
    Matrix bath = Matrix::Zero(dim_bath, dim_bath);
    bath(0, 0) = 1.0;
    if (rho_bath != nullptr) {
        validate_density(*rho_bath);
        bath = *rho_bath;
    }

    PurityReport report;
    report.trials.reserve(static_cast<std::size_t>(trials));
    for (long t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const Matrix u = z_conserving_unitary(2 + n_bath, rng);
        PurityTrial trial = purity_trial_for_unitary(u, n_bath, bath);
        if (trial.bound_satisfied) ++report.n_bound_satisfied;
        if (trial.assumption_held) ++report.n_assumption_held;
        if (trial.assumption_held && !trial.bound_satisfied) ++report.n_violations_with_assumption;
        report.trials.push_back(trial);
    }
    return report;
}

}  // namespace polsim
