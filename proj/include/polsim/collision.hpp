// Multilayer absorbing-polarizer collision model on the <= 1 photon
// subspace, basis (|0>, |h>, |v>). A layer at angle theta transmits the
// polarization axis rotated by theta from h and attenuates the orthogonal
// axis by the amplitude t; the lost amplitude is routed to the vacuum.

#pragma once

#include "polsim/common.hpp"
#include "polsim/rng.hpp"

#include <cstdint>
#include <vector>

namespace polsim {

struct LayerParams {
    double t = 1.0;      // amplitude transmission, in [0,1]
    double theta = 0.0;  // transmission-axis angle, radians
};

struct KrausPair {
    Matrix k1;  // photon-sector map (3x3)
    Matrix k2;  // absorption into the vacuum (3x3, single nonzero row)
};

// Kraus operators of one layer; K1^dag K1 + K2^dag K2 = I. Derived from the
// beamsplitter partial-trace channel with a vacuum ancilla, so apply_layer
// matches pbs_cptp at the same (theta, t).
KrausPair kraus_pair(const LayerParams& layer);

// rho' = K1 rho K1^dag + K2 rho K2^dag, re-symmetrized to suppress
// round-off drift over long layer chains.
Matrix apply_layer(const Matrix& rho, const LayerParams& layer);

// Gaussian layer angles with mean `mean_angle` and variance
// `temperature_ratio` = k_B T / kappa. Streams are keyed by
// (seed, realization, layer), so any parallel schedule reproduces the same
// angle sequence.
class ThermalAngleSampler {
public:
    ThermalAngleSampler(double mean_angle, double temperature_ratio, std::uint64_t seed);

    double angle(std::uint64_t realization, std::uint64_t layer) const;

    double mean_angle() const { return mean_; }
    double temperature_ratio() const { return ratio_; }

private:
    double mean_;
    double ratio_;
    double stddev_;
    std::uint64_t seed_;
};

// The fully coherent equal-weight initial state: every entry 1/3.
Matrix uniform_superposition_state();

struct TrajectoryConfig {
    Matrix rho0;                   // 3x3 initial state
    int layers = 1;                // N >= 1
    double t = 0.9;                // amplitude transmission
    double temperature_ratio = 0;  // k_B T / kappa
    double mean_angle = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;  // stream id within an ensemble
    int validate_stride = 100;      // full state validation every this many layers (0 = off)
};

// Per-layer observables, rows 0..layers (row 0 is the initial state).
struct TrajectoryRecord {
    std::vector<double> p0, ph, pv;
    std::vector<double> coh_hv2, coh_v02, coh_h02;  // squared moduli
    std::vector<double> entropy_shannon;            // of (p0, ph, pv), nats
    std::vector<double> entropy_vn;                 // auxiliary, nats
    std::vector<double> energy;                     // 1 - p0

    int layers = 0;
    double t = 0.0;
    double temperature_ratio = 0.0;
    double mean_angle = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;
};

TrajectoryRecord run_trajectory(const TrajectoryConfig& config);

struct EnsembleConfig {
    Matrix rho0;
    int layers = 1;
    double t = 0.9;
    double temperature_ratio = 0.0;
    double mean_angle = 0.0;
    int realizations = 1;
    std::uint64_t seed = 0;
    int workers = 1;
    int validate_stride = 100;
    bool keep_curves = false;  // retain per-realization entropy/energy series
};

// Per-layer means and standard errors of every trajectory observable.
// Accumulation is performed in fixed blocks of realizations merged in index
// order, so results are bit-identical for any worker count.
struct EnsembleSummary {
    std::vector<std::string> names;         // observable names, CSV order
    std::vector<std::vector<double>> mean;  // [observable][layer]
    std::vector<std::vector<double>> se;    // [observable][layer]
    int realizations = 0;
};

struct EnsembleResult {
    EnsembleSummary summary;
    // Only filled when keep_curves is set; indexed [realization][layer].
    std::vector<std::vector<double>> entropy_curves;
    std::vector<std::vector<double>> energy_curves;
};

EnsembleResult run_ensemble(const EnsembleConfig& config);

// Earliest layer index a such that the `width` consecutive per-layer steps
// starting at a all satisfy |delta entropy| < threshold and |delta energy| <
// threshold; -1 when no such window exists.
int plateau_window_start(const std::vector<double>& entropy, const std::vector<double>& energy,
                         double threshold, int width);

// First row index whose value drops below the threshold; -1 if it never does.
int first_below(const std::vector<double>& series, double threshold);

}  // namespace polsim
