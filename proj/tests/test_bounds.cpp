#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polsim/bounds.hpp"
#include "polsim/density.hpp"
#include "polsim/linalg.hpp"
#include "polsim/rng.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace polsim;

namespace {

// exp(x) - 1 summed term by term, independent of std::expm1.
double expm1_series(double x) {
    double term = 1.0, sum = 0.0;
    for (int k = 1; k <= 30; ++k) {
        term *= x / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

double coth_oracle(double x) {
    const double e = std::exp(2.0 * x);
    return (e + 1.0) / (e - 1.0);
}

}  // namespace

TEST_CASE("classical polarizer bound on stated inputs") {
    CHECK(alp_classical_heat_bound({0.0, 1.0}) == doctest::Approx(0.0));
    CHECK(alp_classical_heat_bound({std::numbers::ln2, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    const double small = alp_classical_heat_bound({0.01, 1.0});
    CHECK(small == doctest::Approx(expm1_series(0.01)).epsilon(1e-14));
    CHECK(small >= alp_classical_differential(1.0, 0.01));  // exceeds the linearized bound
    CHECK_THROWS_AS(alp_classical_heat_bound({0.1, 0.0}), std::invalid_argument);
}

TEST_CASE("quantum polarizer bound on stated inputs") {
    CHECK(alp_quantum_heat_bound({std::numbers::ln2, 0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(alp_quantum_heat_bound({std::numbers::ln2, 1.0, 1.0}) ==
          doctest::Approx(0.5 * coth_oracle(0.5)).epsilon(1e-13));
    // High-temperature agreement with the classical form, within 1% at ratio 50.
    for (double ratio : {50.0, 80.0, 200.0}) {
        const double q = alp_quantum_heat_bound({std::numbers::ln2, ratio, 1.0});
        const double c = alp_classical_heat_bound({std::numbers::ln2, ratio});
        CHECK(std::abs(q / c - 1.0) < 0.01);
    }
}

TEST_CASE("polarizer bounds are monotone in the erasure and non-negative") {
    double prev_c = -1.0, prev_q = -1.0;
    for (double erasure = 0.0; erasure <= 3.0; erasure += 0.1) {
        const double c = alp_classical_heat_bound({erasure, 0.7});
        const double q = alp_quantum_heat_bound({erasure, 0.7, 1.3});
        CHECK(c >= 0.0);
        CHECK(q >= 0.0);
        CHECK(c > prev_c);
        CHECK(q > prev_q);
        prev_c = c;
        prev_q = q;
    }
}

TEST_CASE("quantum bound limits: zero temperature and per-bit cost") {
    // T -> 0: (hw/2)(e^erasure - 1).
    const double q0 = alp_quantum_heat_bound({0.4, 1e-9, 2.0});
    CHECK(q0 == doctest::Approx(1.0 * std::expm1(0.4)).epsilon(1e-9));
    // Differential per-bit cost at T -> 0 equals ln(2)/2 in hw = 1 units.
    CHECK(alp_quantum_differential(0.0, 1.0, std::numbers::ln2) ==
          doctest::Approx(0.5 * std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("semiclassical beamsplitter bound") {
    CHECK(pbs_semiclassical_heat_bound({0.0, 1.0, 1.0, std::numbers::ln2}) == doctest::Approx(0.0));
    const PbsSemiclassicalInput base{1.0, 100.0, 1.0, std::numbers::ln2};
    PbsSemiclassicalInput heavy = base;
    heavy.mass_energy *= 2.0;
    CHECK(pbs_semiclassical_heat_bound(base) / pbs_semiclassical_heat_bound(heavy) ==
          doctest::Approx(4.0).epsilon(1e-14));
    CHECK(pbs_semiclassical_heat_bound(base) ==
          doctest::Approx(std::numbers::ln2 / 2.0e4).epsilon(1e-14));
    CHECK_FALSE(pbs_semiclassical_validity_warning(base));
    CHECK(pbs_semiclassical_validity_warning({1.0, 5.0, 1.0, 0.1}));
}

TEST_CASE("quantum beamsplitter purity bound") {
    const double eps_edge = 1.0 / (2.0 * std::numbers::sqrt2);
    CHECK(pbs_quantum_purity_bound({1, eps_edge}) == doctest::Approx(0.0));
    CHECK(pbs_quantum_purity_bound({1, eps_edge + 0.1}) == doctest::Approx(0.0));
    CHECK(pbs_quantum_purity_bound({1, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pbs_quantum_purity_bound({2, 0.0}) == doctest::Approx(0.125).epsilon(1e-15));
    // Exponential decay with bath size: bound(N+1)/bound(N) = N / (2 (N+1)).
    for (int n = 1; n <= 6; ++n) {
        const double ratio = pbs_quantum_purity_bound({n + 1, 0.05}) / pbs_quantum_purity_bound({n, 0.05});
        CHECK(ratio == doctest::Approx(n / (2.0 * (n + 1))).epsilon(1e-13));
    }
    // Monotone decreasing in epsilon on its support.
    double prev = 1.0;
    for (double eps = 0.0; eps < eps_edge; eps += 0.05) {
        const double b = pbs_quantum_purity_bound({2, eps});
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("semiclassical and purity bounds cross exactly once on the default sweep") {
    // Default parameters of the mass sweep: 1 eV photon, 300 K, zero error,
    // m/m_e on a log grid. The heat bound falls as 1/m^2 while the purity
    // bound falls exponentially, so the curves cross once.
    const double k_t = 8.617333262e-5 * 300.0;
    const double me_ev = 510998.95;
    int sign_changes = 0;
    double prev_diff = 0.0;
    for (int i = 0; i < 400; ++i) {
        const double m_over_me = std::pow(10.0, 4.0 * i / 399.0);
        const double semi =
            pbs_semiclassical_heat_bound({1.0, m_over_me * me_ev, k_t, std::numbers::ln2});
        const double pur = pbs_quantum_purity_bound_continuous(m_over_me, 0.0);
        const double diff = semi - pur;
        if (i > 0 && diff * prev_diff < 0.0) ++sign_changes;
        prev_diff = diff;
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("gaussian maximum-entropy bound") {
    GaussianMoments one;
    one.covariance = RealMatrix::Identity(1, 1);
    const double expected1 = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
    CHECK(gaussian_entropy_upper_bound(one) == doctest::Approx(expected1).epsilon(1e-14));

    GaussianMoments two;
    two.covariance = RealMatrix::Identity(2, 2);
    CHECK(gaussian_entropy_upper_bound(two) == doctest::Approx(2.0 * expected1).epsilon(1e-14));

    GaussianMoments singular;
    singular.covariance = RealMatrix::Zero(2, 2);
    singular.covariance(0, 0) = 1.0;
    CHECK(std::isinf(gaussian_entropy_upper_bound(singular)));
    CHECK(gaussian_entropy_upper_bound(singular) < 0.0);
}

TEST_CASE("histogram entropy of Gaussian samples stays below the bound") {
    GaussianMoments moments;
    moments.covariance.resize(2, 2);
    moments.covariance << 1.0, 0.3, 0.3, 0.64;
    const double bound = gaussian_entropy_upper_bound(moments);

    // Cholesky factor for sampling.
    const double l00 = 1.0;
    const double l10 = 0.3;
    const double l11 = std::sqrt(0.64 - 0.09);

    const int bins = 120;
    const double lo0 = -5.0, hi0 = 5.0;
    const double lo1 = -5.0 * 0.8, hi1 = 5.0 * 0.8;
    const double w0 = (hi0 - lo0) / bins, w1 = (hi1 - lo1) / bins;
    std::vector<long> counts(static_cast<std::size_t>(bins * bins), 0);
    const long n = 1000000;
    long kept = 0;
    Rng rng(2024);
    for (long i = 0; i < n; ++i) {
        const double z0 = rng.normal(), z1 = rng.normal();
        const double x0 = l00 * z0;
        const double x1 = l10 * z0 + l11 * z1;
        const int b0 = static_cast<int>((x0 - lo0) / w0);
        const int b1 = static_cast<int>((x1 - lo1) / w1);
        if (b0 < 0 || b0 >= bins || b1 < 0 || b1 >= bins) continue;
        ++kept;
        ++counts[static_cast<std::size_t>(b0 * bins + b1)];
    }
    double entropy = 0.0;
    for (long c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(kept);
        entropy -= p * std::log(p / (w0 * w1));
    }
    CHECK(entropy <= bound + 0.05);  // plug-in estimate, small bias margin
    CHECK(entropy > bound - 0.2);    // sanity: the sample is actually Gaussian
}

TEST_CASE("momentum walk: zero photons means zero entropy change") {
    const PbsSemiclassicalInput in{1.0, 100.0, 1.0, 0.0};
    const auto res = simulate_pbs_momentum_walk({0}, in, 0.2, 20000, 99);
    CHECK(res.entropy_change[0] == doctest::Approx(0.0));
    CHECK(res.closed_form[0] == doctest::Approx(0.0));
}

TEST_CASE("momentum walk matches the Gaussian-limit closed form") {
    const PbsSemiclassicalInput in{1.0, 100.0, 1.0, 0.0};
    const double dp = 0.2;
    const auto res = simulate_pbs_momentum_walk({1000, 10000}, in, dp, 100000, 7);
    for (std::size_t i = 0; i < res.photon_counts.size(); ++i) {
        CHECK(std::abs(res.entropy_change[i] - res.closed_form[i]) < 3.0 * res.standard_error[i]);
        // Kick variance approaches dp^2 N / 4.
        const double expected = dp * dp * static_cast<double>(res.photon_counts[i]) / 4.0;
        CHECK(std::abs(res.kick_variance[i] / expected - 1.0) < 0.05);
    }
    // Entropy growth is non-negative and concave in N on a denser grid.
    const auto series = simulate_pbs_momentum_walk({2000, 4000, 6000, 8000, 10000}, in, dp, 40000, 11);
    for (std::size_t i = 0; i < series.entropy_change.size(); ++i) CHECK(series.entropy_change[i] >= 0.0);
    for (std::size_t i = 2; i < series.entropy_change.size(); ++i) {
        const double second_diff = series.entropy_change[i] - 2.0 * series.entropy_change[i - 1] +
                                   series.entropy_change[i - 2];
        const double se = 3.0 * (series.standard_error[i] + 2.0 * series.standard_error[i - 1] +
                                 series.standard_error[i - 2]);
        CHECK(second_diff <= se);
    }
}

TEST_CASE("purity trial with the identity unitary") {
    Matrix bath = Matrix::Zero(2, 2);
    bath(0, 0) = 1.0;
    const PurityTrial trial = purity_trial_for_unitary(Matrix::Identity(8, 8), 1, bath);
    // Control mixed, target never flips: the state misses the ideal output by
    // exactly 1/sqrt(2) in Hilbert-Schmidt distance.
    CHECK(trial.epsilon == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
    CHECK(trial.purity_after == doctest::Approx(trial.purity_before).epsilon(1e-12));
    CHECK(trial.bound == doctest::Approx(0.0));  // epsilon beyond the support
    CHECK(trial.bound_satisfied);
    CHECK(trial.assumption_held);
}

TEST_CASE("purity trial with the exact swap-based transfer saturates the bound") {
    // Controlled swap of target and bath qubit, bath prepared in |1>: the
    // CNOT comes out exact (epsilon = 0) and the bath purity drops by exactly
    // the bound 1/2.
    Matrix u = Matrix::Identity(8, 8);
    u(5, 5) = 0.0;
    u(6, 6) = 0.0;
    u(5, 6) = 1.0;
    u(6, 5) = 1.0;
    Matrix bath = Matrix::Zero(2, 2);
    bath(1, 1) = 1.0;
    const PurityTrial trial = purity_trial_for_unitary(u, 1, bath);
    CHECK(trial.epsilon == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(trial.bound == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(trial.purity_before - trial.purity_after == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(trial.bound_satisfied);
    CHECK(trial.assumption_held);
}

TEST_CASE("sampled conserving unitaries never violate the bound on a pure bath") {
    for (int n_bath : {1, 2}) {
        const PurityReport report = verify_purity_bound_small_bath(n_bath, 300, 31);
        CHECK(report.n_assumption_held == 300);
        CHECK(report.n_violations_with_assumption == 0);
        CHECK(report.n_bound_satisfied == 300);
    }
}

TEST_CASE("mixed baths exercise the intermediate-assumption reporting") {
    Rng rng(5);
    Matrix g(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = rng.complex_normal();
    Matrix bath = g * g.adjoint();
    bath /= bath.trace();
    bath = hermitize(bath);
    const PurityReport report = verify_purity_bound_small_bath(1, 400, 37, &bath);
    CHECK(report.n_assumption_held < 400);  // genuinely fails for some unitaries
    CHECK(report.n_violations_with_assumption == 0);
    CHECK(static_cast<long>(report.trials.size()) == 400);
}

TEST_CASE("conserving unitaries commute with total Z") {
    Rng rng(41);
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 3;
        const Matrix u = z_conserving_unitary(n, rng);
        CHECK(is_unitary(u, 1e-12));
        Matrix z_total = Matrix::Zero(1 << n, 1 << n);
        for (int idx = 0; idx < (1 << n); ++idx) {
            int weight = 0;
            for (int b = 0; b < n; ++b) weight += (idx >> b) & 1;
            z_total(idx, idx) = static_cast<double>(n - 2 * weight);
        }
        CHECK(max_abs(u * z_total - z_total * u) < 1e-12);
    }
}
