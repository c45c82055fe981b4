#include "polsim/collision.hpp"

#include "polsim/density.hpp"
#include "polsim/linalg.hpp"
#include "polsim/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace polsim {

namespace {

using Matrix3 = Eigen::Matrix3cd;

void kraus_fixed(const LayerParams& layer, Matrix3& k1, Matrix3& k2) {
    const double t = layer.t;
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("kraus_pair: t must lie in [0,1]");
    const double r = std::sqrt(1.0 - t * t);
    const double c = std::cos(layer.theta), s = std::sin(layer.theta);

    // Photon sector: identity minus (1 - t) times the projector onto the
    // absorbing axis (-sin, cos); vacuum untouched.
    k1.setZero();
    k1(0, 0) = 1.0;
    k1(1, 1) = c * c + t * s * s;
    k1(1, 2) = (1.0 - t) * s * c;
    k1(2, 1) = (1.0 - t) * s * c;
    k1(2, 2) = t * c * c + s * s;

    // Absorbing-axis amplitude routed to the vacuum.
    k2.setZero();
    k2(0, 1) = -r * s;
    k2(0, 2) = r * c;
}

Matrix3 apply_layer_fixed(const Matrix3& rho, const LayerParams& layer) {
    Matrix3 k1, k2;
    kraus_fixed(layer, k1, k2);
    const Matrix3 out = k1 * rho * k1.adjoint() + k2 * rho * k2.adjoint();
    return 0.5 * (out + out.adjoint());
}

double vn_entropy_fixed(const Matrix3& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix3> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double x = es.eigenvalues()(i);
        if (x > 0.0) s -= x * std::log(x);
    }
    return s;
}

void record_row(const Matrix3& rho, TrajectoryRecord& rec) {
    const double p0 = rho(0, 0).real(), ph = rho(1, 1).real(), pv = rho(2, 2).real();
    rec.p0.push_back(p0);
    rec.ph.push_back(ph);
    rec.pv.push_back(pv);
    rec.coh_hv2.push_back(std::norm(rho(1, 2)));
    rec.coh_v02.push_back(std::norm(rho(2, 0)));
    rec.coh_h02.push_back(std::norm(rho(1, 0)));
    double s = 0.0;
    for (double x : {p0, ph, pv})
        if (x > 0.0) s -= x * std::log(x);
    rec.entropy_shannon.push_back(s);
    rec.entropy_vn.push_back(vn_entropy_fixed(rho));
    rec.energy.push_back(1.0 - p0);
}

}  // namespace

KrausPair kraus_pair(const LayerParams& layer) {
    Matrix3 k1, k2;
    kraus_fixed(layer, k1, k2);
    return {Matrix(k1), Matrix(k2)};
}

Matrix apply_layer(const Matrix& rho, const LayerParams& layer) {
    if (rho.rows() != 3 || rho.cols() != 3) throw std::invalid_argument("apply_layer: expected a 3x3 state");
    return Matrix(apply_layer_fixed(Matrix3(rho), layer));
}

ThermalAngleSampler::ThermalAngleSampler(double mean_angle, double temperature_ratio, std::uint64_t seed)
    : mean_(mean_angle), ratio_(temperature_ratio), stddev_(std::sqrt(temperature_ratio)), seed_(seed) {
    if (temperature_ratio < 0.0)
        throw std::invalid_argument("ThermalAngleSampler: temperature ratio must be >= 0");
}

double ThermalAngleSampler::angle(std::uint64_t realization, std::uint64_t layer) const {
    if (stddev_ == 0.0) return mean_;
    Rng rng(seed_, realization, layer);
    return mean_ + stddev_ * rng.normal();
}

Matrix uniform_superposition_state() {
    Matrix rho(3, 3);
    rho.setConstant(cxd(1.0 / 3.0, 0.0));
    return rho;
}

TrajectoryRecord run_trajectory(const TrajectoryConfig& config) {
    if (config.layers < 1) throw std::invalid_argument("run_trajectory: need at least one layer");
    if (config.rho0.rows() != 3 || config.rho0.cols() != 3)
        throw std::invalid_argument("run_trajectory: expected a 3x3 initial state");
    validate_density(config.rho0);

    const ThermalAngleSampler sampler(config.mean_angle, config.temperature_ratio, config.seed);

    TrajectoryRecord rec;
    rec.layers = config.layers;
    rec.t = config.t;
    rec.temperature_ratio = config.temperature_ratio;
    rec.mean_angle = config.mean_angle;
    rec.seed = config.seed;
    rec.realization = config.realization;

    const auto reserve = static_cast<std::size_t>(config.layers + 1);
    for (auto* v : {&rec.p0, &rec.ph, &rec.pv, &rec.coh_hv2, &rec.coh_v02, &rec.coh_h02,
                    &rec.entropy_shannon, &rec.entropy_vn, &rec.energy})
        v->reserve(reserve);

    Matrix3 rho = Matrix3(config.rho0);
    record_row(rho, rec);
    for (int n = 0; n < config.layers; ++n) {
        const LayerParams layer{config.t,
                                sampler.angle(config.realization, static_cast<std::uint64_t>(n))};
        rho = apply_layer_fixed(rho, layer);
        if (config.validate_stride > 0 && (n + 1) % config.validate_stride == 0)
            validate_density(Matrix(rho), 1e-10, 1e-10, 1e-9);
        record_row(rho, rec);
    }
    return rec;
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
    if (config.realizations < 1) throw std::invalid_argument("run_ensemble: need realizations >= 1");

    constexpr int kObservables = 9;
    const int rows = config.layers + 1;
    const int block_size = 8;  // fixed accumulation granularity, independent of workers
    const int n_blocks = (config.realizations + block_size - 1) / block_size;

    struct BlockSums {
        std::vector<double> sum;     // [observable * rows + layer]
        std::vector<double> sum_sq;
    };
    std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks));

    EnsembleResult result;
    if (config.keep_curves) {
        result.entropy_curves.resize(static_cast<std::size_t>(config.realizations));
        result.energy_curves.resize(static_cast<std::size_t>(config.realizations));
    }

    parallel_for(n_blocks, config.workers, [&](int b) {
        BlockSums& acc = blocks[static_cast<std::size_t>(b)];
        acc.sum.assign(static_cast<std::size_t>(kObservables * rows), 0.0);
        acc.sum_sq.assign(static_cast<std::size_t>(kObservables * rows), 0.0);
        const int lo = b * block_size;
        const int hi = std::min(config.realizations, lo + block_size);
        for (int r = lo; r < hi; ++r) {
            TrajectoryConfig tc;
            tc.rho0 = config.rho0;
            tc.layers = config.layers;
            tc.t = config.t;
            tc.temperature_ratio = config.temperature_ratio;
            tc.mean_angle = config.mean_angle;
            tc.seed = config.seed;
            tc.realization = static_cast<std::uint64_t>(r);
            tc.validate_stride = config.validate_stride;
            const TrajectoryRecord rec = run_trajectory(tc);
            const std::vector<double>* obs[kObservables] = {
                &rec.p0, &rec.ph, &rec.pv, &rec.coh_hv2, &rec.coh_v02, &rec.coh_h02,
                &rec.entropy_shannon, &rec.entropy_vn, &rec.energy};
            for (int o = 0; o < kObservables; ++o)
                for (int n = 0; n < rows; ++n) {
                    const double x = (*obs[o])[static_cast<std::size_t>(n)];
                    acc.sum[static_cast<std::size_t>(o * rows + n)] += x;
                    acc.sum_sq[static_cast<std::size_t>(o * rows + n)] += x * x;
                }
            if (config.keep_curves) {
                result.entropy_curves[static_cast<std::size_t>(r)] = rec.entropy_shannon;
                result.energy_curves[static_cast<std::size_t>(r)] = rec.energy;
            }
        }
    });

    EnsembleSummary& summary = result.summary;
    summary.names = {"p0", "ph", "pv", "coh_hv2", "coh_v02", "coh_h02",
                     "entropy_shannon", "entropy_vn", "energy"};
    summary.realizations = config.realizations;
    summary.mean.assign(kObservables, std::vector<double>(static_cast<std::size_t>(rows), 0.0));
    summary.se.assign(kObservables, std::vector<double>(static_cast<std::size_t>(rows), 0.0));

    const double n_r = static_cast<double>(config.realizations);
    for (int o = 0; o < kObservables; ++o)
        for (int n = 0; n < rows; ++n) {
            double sum = 0.0, sum_sq = 0.0;
            for (const BlockSums& acc : blocks) {  // merged in block order
                sum += acc.sum[static_cast<std::size_t>(o * rows + n)];
                sum_sq += acc.sum_sq[static_cast<std::size_t>(o * rows + n)];
            }
            const double mean = sum / n_r;
            summary.mean[static_cast<std::size_t>(o)][static_cast<std::size_t>(n)] = mean;
            if (config.realizations > 1) {
                const double var = std::max(0.0, (sum_sq - n_r * mean * mean) / (n_r - 1.0));
                summary.se[static_cast<std::size_t>(o)][static_cast<std::size_t>(n)] =
                    std::sqrt(var / n_r);
            }
        }
    return result;
}

int plateau_window_start(const std::vector<double>& entropy, const std::vector<double>& energy,
                         double threshold, int width) {
    if (entropy.size() != energy.size() || entropy.size() < 2 || width < 1) return -1;
    const int steps = static_cast<int>(entropy.size()) - 1;
    int run = 0;
    for (int n = 0; n < steps; ++n) {
        const bool flat = std::abs(entropy[static_cast<std::size_t>(n + 1)] - entropy[static_cast<std::size_t>(n)]) < threshold &&
                          std::abs(energy[static_cast<std::size_t>(n + 1)] - energy[static_cast<std::size_t>(n)]) < threshold;
        run = flat ? run + 1 : 0;
        if (run >= width) return n - width + 1;
    }
    return -1;
}

int first_below(const std::vector<double>& series, double threshold) {
    for (std::size_t i = 0; i < series.size(); ++i)
        if (series[i] < threshold) return static_cast<int>(i);
    return -1;
}

}  // namespace polsim
