#include "polsim/eraser.hpp"

#include "polsim/collision.hpp"
#include "polsim/linalg.hpp"
#include "polsim/parallel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polsim {

namespace {

constexpr int kDim = 12;

// Lift a 2x2 operator on the path qubit (block index k) to the full space.
Matrix lift_path(const Eigen::Matrix2cd& op) {
    Matrix out = Matrix::Zero(kDim, kDim);
    for (int k = 0; k < 2; ++k)
        for (int kp = 0; kp < 2; ++kp) {
            if (op(k, kp) == cxd(0.0, 0.0)) continue;
            for (int m = 0; m < 6; ++m) out(6 * k + m, 6 * kp + m) = op(k, kp);
        }
    return out;
}

// Lift a 2x2 operator on the polarization of a single path; identity on the
// other path and on the signal.
Matrix lift_pol_on_path(const Eigen::Matrix2cd& op, int path) {
    Matrix out = Matrix::Zero(kDim, kDim);
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            for (int jp = 0; jp < 2; ++jp) {
                const cxd v = (k == path - 1) ? op(j, jp) : (j == jp ? cxd(1.0, 0.0) : cxd(0.0, 0.0));
                if (v == cxd(0.0, 0.0)) continue;
                for (int i = 0; i < 3; ++i) out(6 * k + 3 * j + i, 6 * k + 3 * jp + i) = v;
            }
    return out;
}

Matrix conjugate(const Matrix& sigma, const Matrix& u) { return u * sigma * u.adjoint(); }

using Superop = Eigen::Matrix<double, 9, 9>;

// Superoperator of one collision layer on the 3-dim signal in column-major
// vec convention: vec(K X K^T) = (K (x) K) vec(X) for real K.
Superop layer_superop(const LayerParams& layer) {
    const KrausPair kp = kraus_pair(layer);
    const Eigen::Matrix3d k1 = kp.k1.real();
    const Eigen::Matrix3d k2 = kp.k2.real();
    Superop s = Superop::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    s(3 * b + a, 3 * d + c) = k1(a, c) * k1(b, d) + k2(a, c) * k2(b, d);
    return s;
}

}  // namespace

Matrix bell_initial_state() {
    Vector psi = Vector::Zero(kDim);
    psi(1) = 1.0 / std::numbers::sqrt2;  // |h h 1>
    psi(5) = 1.0 / std::numbers::sqrt2;  // |v v 1>
    return psi * psi.adjoint();
}

Matrix idler_beamsplitter(const Matrix& sigma) {
    Eigen::Matrix2cd b;
    b << 1.0, cxd(0.0, 1.0), cxd(0.0, 1.0), 1.0;
    b /= std::numbers::sqrt2;
    return conjugate(sigma, lift_path(b));
}

Matrix idler_phase(const Matrix& sigma, double phi) {
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = 1.0;
    d(1, 1) = std::exp(cxd(0.0, phi));
    return conjugate(sigma, lift_path(d));
}

Matrix idler_qwp(const Matrix& sigma, int path, double fast_axis) {
    if (path != 1 && path != 2) throw std::invalid_argument("idler_qwp: path must be 1 or 2");
    const double c = std::cos(fast_axis), s = std::sin(fast_axis);
    Eigen::Matrix2cd j;
    j << cxd(c * c, s * s), cxd(s * c, -s * c), cxd(s * c, -s * c), cxd(s * s, c * c);
    j *= std::exp(cxd(0.0, -std::numbers::pi / 4.0));
    return conjugate(sigma, lift_pol_on_path(j, path));
}

Matrix signal_polarizer(const Matrix& sigma, double theta_pol, double temperature_ratio, int layers,
                        double t, std::uint64_t seed, std::uint64_t realization) {
    if (sigma.rows() != kDim || sigma.cols() != kDim)
        throw std::invalid_argument("signal_polarizer: expected the 12-dim two-photon state");
    if (layers < 1) throw std::invalid_argument("signal_polarizer: need at least one layer");

    const ThermalAngleSampler sampler(theta_pol, temperature_ratio, seed);
    Superop total = Superop::Identity();
    for (int n = 0; n < layers; ++n) {
        const LayerParams layer{t, sampler.angle(realization, static_cast<std::uint64_t>(n))};
        total = layer_superop(layer) * total;
    }

    // Apply the composed signal channel to every 3x3 signal block.
    Matrix out = Matrix::Zero(kDim, kDim);
    for (int m = 0; m < 4; ++m)
        for (int mp = 0; mp < 4; ++mp) {
            Eigen::Matrix<cxd, 9, 1> v;
            for (int col = 0; col < 3; ++col)
                for (int row = 0; row < 3; ++row) v(3 * col + row) = sigma(3 * m + row, 3 * mp + col);
            const Eigen::Matrix<cxd, 9, 1> w = total * v;
            for (int col = 0; col < 3; ++col)
                for (int row = 0; row < 3; ++row) out(3 * m + row, 3 * mp + col) = w(3 * col + row);
        }
    return hermitize(out);
}

ExitProbabilities exit_probabilities_unconditional(const Matrix& sigma) {
    ExitProbabilities out;
    for (int m = 0; m < 12; ++m) {
        const double d = sigma(m, m).real();
        (m < 6 ? out.port1 : out.port2) += d;
        if (m % 3 != 0) out.transmitted += d;  // signal index 0 is the vacuum
    }
    return out;
}

ExitProbabilities exit_probabilities(const Matrix& sigma) {
    ExitProbabilities out = exit_probabilities_unconditional(sigma);
    if (out.transmitted <= 0.0)
        throw std::domain_error("exit_probabilities: conditioning on zero transmission probability");
    double c1 = 0.0, c2 = 0.0;
    for (int m = 0; m < 12; ++m) {
        if (m % 3 == 0) continue;
        (m < 6 ? c1 : c2) += sigma(m, m).real();
    }
    out.port1_cond = c1 / out.transmitted;
    out.port2_cond = c2 / out.transmitted;
    return out;
}

Matrix run_eraser(const EraserConfig& config, std::uint64_t realization) {
    Matrix sigma = bell_initial_state();
    sigma = idler_beamsplitter(sigma);
    if (config.marked) {
        sigma = idler_qwp(sigma, 1, std::numbers::pi / 4.0);
        sigma = idler_qwp(sigma, 2, -std::numbers::pi / 4.0);
    }
    sigma = idler_phase(sigma, config.phase);
    sigma = idler_beamsplitter(sigma);
    if (config.measure)
        sigma = signal_polarizer(sigma, config.polarizer_angle, config.temperature_ratio,
                                 config.layers, config.t, config.seed, realization);
    return sigma;
}

std::vector<PhiSweepRow> phi_sweep(const EraserConfig& config, int points) {
    if (points < 1) throw std::invalid_argument("phi_sweep: need at least one point");
    std::vector<PhiSweepRow> rows;
    rows.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        EraserConfig c = config;
        c.phase = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
        const Matrix sigma = run_eraser(c);
        const ExitProbabilities p = exit_probabilities(sigma);
        rows.push_back({c.phase, p.port1, p.port2, p.port1_cond, p.port2_cond});
    }
    return rows;
}

std::vector<TemperatureSweepRow> temperature_sweep(const EraserConfig& config,
                                                   const std::vector<double>& ratios,
                                                   int realizations, int workers) {
    if (realizations < 1) throw std::invalid_argument("temperature_sweep: need realizations >= 1");
    std::vector<TemperatureSweepRow> rows(ratios.size());

    constexpr int kBlock = 16;  // fixed accumulation blocks, worker-count independent
    const int n_blocks = (realizations + kBlock - 1) / kBlock;
    struct Sums {
        double s1 = 0.0, s1_sq = 0.0, s2 = 0.0, s2_sq = 0.0;
    };

    for (std::size_t ti = 0; ti < ratios.size(); ++ti) {
        EraserConfig c = config;
        c.measure = true;
        c.temperature_ratio = ratios[ti];
        std::vector<Sums> blocks(static_cast<std::size_t>(n_blocks));
        parallel_for(n_blocks, workers, [&](int b) {
            Sums& acc = blocks[static_cast<std::size_t>(b)];
            const int lo = b * kBlock;
            const int hi = std::min(realizations, lo + kBlock);
            for (int r = lo; r < hi; ++r) {
                // Streams keyed by (temperature index, realization) so grid
                // points stay independent.
                const Matrix sigma = run_eraser(c, (static_cast<std::uint64_t>(ti) << 32) |
                                                       static_cast<std::uint64_t>(r));
                const ExitProbabilities p = exit_probabilities(sigma);
                acc.s1 += p.port1_cond;
                acc.s1_sq += p.port1_cond * p.port1_cond;
                acc.s2 += p.port2_cond;
                acc.s2_sq += p.port2_cond * p.port2_cond;
            }
        });
        double s1 = 0.0, s1_sq = 0.0, s2 = 0.0, s2_sq = 0.0;
        for (const Sums& acc : blocks) {
            s1 += acc.s1;
            s1_sq += acc.s1_sq;
            s2 += acc.s2;
            s2_sq += acc.s2_sq;
        }
        const double n = static_cast<double>(realizations);
        TemperatureSweepRow& row = rows[ti];
        row.temperature_ratio = ratios[ti];
        row.mean_p1_cond = s1 / n;
        row.mean_p2_cond = s2 / n;
        if (realizations > 1) {
            row.se_p1 = std::sqrt(std::max(0.0, (s1_sq - n * row.mean_p1_cond * row.mean_p1_cond) /
                                                    (n - 1.0)) / n);
            row.se_p2 = std::sqrt(std::max(0.0, (s2_sq - n * row.mean_p2_cond * row.mean_p2_cond) /
                                                    (n - 1.0)) / n);
        }
    }
    return rows;
}

double visibility(const std::vector<double>& probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("visibility: empty sweep");
    double lo = probabilities.front(), hi = probabilities.front();
    for (double p : probabilities) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    if (hi + lo == 0.0) return 0.0;
    return (hi - lo) / (hi + lo);
}

}  // namespace polsim
