// Temperature-dependent quantum eraser: a signal photon measured by a noisy
// polarizer and an idler photon in a Mach-Zehnder interferometer with
// optional path-marking quarter-wave plates.
//
// The two-photon state is 12-dimensional with index i + 3 j + 6 k for signal
// i in {0, h, v}, idler polarization j in {h, v} and idler path k in {1, 2}.
// Viewed as blocks, it is a 4x4 array of 3x3 signal submatrices.

#pragma once

#include "polsim/common.hpp"

#include <cstdint>
#include <vector>

namespace polsim {

// (|h h 1> + |v v 1>) / sqrt(2) as a density matrix.
Matrix bell_initial_state();

// Symmetric 50/50 beamsplitter (1/sqrt2)[[1, i],[i, 1]] on the path qubit.
Matrix idler_beamsplitter(const Matrix& sigma);

// Phase e^{i phi} on path 2.
Matrix idler_phase(const Matrix& sigma, double phi);

// Quarter-wave plate on the polarization of one path (1 or 2), standard
// Jones matrix at the given fast-axis angle.
Matrix idler_qwp(const Matrix& sigma, int path, double fast_axis);

// Noisy measurement polarizer on the signal: `layers` collision layers with
// per-layer angles ~ N(theta_pol, temperature_ratio), applied blockwise to
// every 3x3 signal submatrix. theta_pol is the transmission-axis angle;
// theta_pol = 0 transmits |h>. Composed as a single superoperator per
// realization, so long chains stay cheap.
Matrix signal_polarizer(const Matrix& sigma, double theta_pol, double temperature_ratio, int layers,
                        double t, std::uint64_t seed, std::uint64_t realization = 0);

struct ExitProbabilities {
    double port1 = 0.0;       // unconditional, includes absorbed-signal weight
    double port2 = 0.0;
    double transmitted = 0.0;  // probability the signal photon survived
    double port1_cond = 0.0;   // conditioned on signal transmission
    double port2_cond = 0.0;
};

// Sums of diagonal elements over the idler path index. The conditioned
// variant renormalizes by the transmitted weight and throws
// std::domain_error when that weight vanishes.
ExitProbabilities exit_probabilities(const Matrix& sigma);
ExitProbabilities exit_probabilities_unconditional(const Matrix& sigma);

struct EraserConfig {
    bool marked = false;            // quarter-wave plates at +pi/4 (path 1) and -pi/4 (path 2)
    double phase = 0.0;             // interferometer phase phi
    bool measure = false;           // apply the signal polarizer
    double polarizer_angle = 0.0;   // theta_pol
    double temperature_ratio = 0.0;
    int layers = 1000;
    double t = 0.9;
    std::uint64_t seed = 0;
};

// Full pipeline: BS, optional QWPs, phase, BS, optional signal polarizer.
Matrix run_eraser(const EraserConfig& config, std::uint64_t realization = 0);

struct PhiSweepRow {
    double phi = 0.0;
    double p_port1 = 0.0, p_port2 = 0.0;
    double p_port1_cond = 0.0, p_port2_cond = 0.0;
};

// Exit probabilities over a uniform phase grid of `points` values in
// [0, 2 pi). Without a measurement the conditioned and unconditional values
// coincide (nothing is absorbed).
std::vector<PhiSweepRow> phi_sweep(const EraserConfig& config, int points);

struct TemperatureSweepRow {
    double temperature_ratio = 0.0;
    double mean_p1_cond = 0.0, se_p1 = 0.0;
    double mean_p2_cond = 0.0, se_p2 = 0.0;
};

// Ensemble means of the conditioned exit probabilities at fixed phase,
// one row per temperature. Realizations use derived streams and fixed-block
// accumulation, so results do not depend on the worker count.
std::vector<TemperatureSweepRow> temperature_sweep(const EraserConfig& config,
                                                   const std::vector<double>& ratios,
                                                   int realizations, int workers = 1);

// Fringe visibility (max - min) / (max + min) over a phase sweep.
double visibility(const std::vector<double>& probabilities);

}  // namespace polsim
