// polsim: batch simulations of noisy polarizers.
//
// One subcommand per produced dataset; every run writes a CSV plus a JSON
// sidecar echoing the full configuration, and is deterministic for a fixed
// seed regardless of --workers.

#include <CLI11.hpp>
#include <json.hpp>

#include "polsim/bounds.hpp"
#include "polsim/collision.hpp"
#include "polsim/eraser.hpp"
#include "polsim/heisenberg.hpp"
#include "polsim/io.hpp"
#include "polsim/version.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr double kBoltzmannEvPerK = 8.617333262e-5;
constexpr double kElectronMassEv = 510998.95;

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        grid.push_back(lo);
        return grid;
    }
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) grid.push_back(std::exp(std::log(lo) + step * i));
    return grid;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        grid.push_back(lo);
        return grid;
    }
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) grid.push_back(lo + step * i);
    return grid;
}

json base_config(const std::string& command, std::uint64_t seed, int workers) {
    return json{{"command", command}, {"version", polsim::kVersion}, {"seed", seed}, {"workers", workers}};
}

// ----------------------------- subcommands -----------------------------------

void cmd_fig_bounds_alp(double temp_min, double temp_max, int points, double hbar_omega,
                        double bits, const std::string& out) {
    const double minus_ds = bits * std::numbers::ln2;
    std::vector<std::vector<std::string>> rows;
    for (double temp_ratio : log_grid(temp_min, temp_max, points)) {
        const double temperature = temp_ratio * hbar_omega;
        rows.push_back({"kBT_over_hbar_omega", polsim::format_double(temp_ratio),
                        polsim::format_double(polsim::alp_classical_differential(temperature, minus_ds)),
                        polsim::format_double(
                            polsim::alp_quantum_differential(temperature, hbar_omega, minus_ds))});
    }
    polsim::write_csv(out, {"parameter", "value", "bound_classical", "bound_quantum"}, rows);
    json cfg = base_config("fig-bounds-alp", 0, 1);
    cfg["parameters"] = {{"temp_min", temp_min}, {"temp_max", temp_max},  {"points", points},
                         {"hbar_omega", hbar_omega}, {"bits", bits},      {"out", out}};
    polsim::write_json_sidecar(out, cfg);
}

void cmd_fig_bounds_pbs(double m_min, double m_max, int points, double photon_ev, double temp_kelvin,
                        double epsilon, const std::string& out) {
    const double k_t = kBoltzmannEvPerK * temp_kelvin;
    std::vector<std::vector<double>> rows;
    for (double m_over_me : log_grid(m_min, m_max, points)) {
        polsim::PbsSemiclassicalInput in;
        in.hbar_omega = photon_ev;
        in.mass_energy = m_over_me * kElectronMassEv;
        in.temperature = k_t;
        in.minus_ds = std::numbers::ln2;
        rows.push_back({m_over_me, polsim::pbs_semiclassical_heat_bound(in),
                        polsim::pbs_quantum_purity_bound_continuous(m_over_me, epsilon)});
    }
    polsim::write_csv(out, {"m_over_me", "bound_semiclassical", "bound_purity"}, rows);
    json cfg = base_config("fig-bounds-pbs", 0, 1);
    cfg["parameters"] = {{"m_min", m_min},   {"m_max", m_max},           {"points", points},
                         {"photon_ev", photon_ev}, {"temp_kelvin", temp_kelvin}, {"epsilon", epsilon},
                         {"out", out}};
    polsim::write_json_sidecar(out, cfg);
}

const std::vector<std::string> kTrajectoryColumns = {
    "layer", "p0", "ph", "pv", "coh_hv2", "coh_v02", "coh_h02", "entropy_shannon", "entropy_vn",
    "energy"};

void cmd_collide(int layers, double t, double temp_ratio, double mean_angle, std::uint64_t seed,
                 int stride, const std::string& out) {
    polsim::TrajectoryConfig config;
    config.rho0 = polsim::uniform_superposition_state();
    config.layers = layers;
    config.t = t;
    config.temperature_ratio = temp_ratio;
    config.mean_angle = mean_angle;
    config.seed = seed;
    config.validate_stride = stride;
    const polsim::TrajectoryRecord rec = polsim::run_trajectory(config);

    std::vector<std::vector<double>> rows;
    for (int n = 0; n <= layers; ++n) {
        const auto i = static_cast<std::size_t>(n);
        rows.push_back({static_cast<double>(n), rec.p0[i], rec.ph[i], rec.pv[i], rec.coh_hv2[i],
                        rec.coh_v02[i], rec.coh_h02[i], rec.entropy_shannon[i], rec.entropy_vn[i],
                        rec.energy[i]});
    }
    polsim::write_csv(out, kTrajectoryColumns, rows);
    json cfg = base_config("collide", seed, 1);
    cfg["parameters"] = {{"layers", layers},       {"t", t},
                         {"temp_ratio", temp_ratio}, {"mean_angle", mean_angle},
                         {"stride", stride},       {"out", out}};
    polsim::write_json_sidecar(out, cfg);
}

void cmd_ensemble(int realizations, int layers, double t, double temp_ratio, double mean_angle,
                  std::uint64_t seed, int workers, const std::string& out) {
    polsim::EnsembleConfig config;
    config.rho0 = polsim::uniform_superposition_state();
    config.layers = layers;
    config.t = t;
    config.temperature_ratio = temp_ratio;
    config.mean_angle = mean_angle;
    config.realizations = realizations;
    config.seed = seed;
    config.workers = workers;
    const polsim::EnsembleSummary summary = polsim::run_ensemble(config).summary;

    std::vector<std::string> columns = {"layer"};
    for (const std::string& name : summary.names) {
        columns.push_back("mean_" + name);
        columns.push_back("se_" + name);
    }
    std::vector<std::vector<double>> rows;
    for (int n = 0; n <= layers; ++n) {
        std::vector<double> row = {static_cast<double>(n)};
        for (std::size_t o = 0; o < summary.names.size(); ++o) {
            row.push_back(summary.mean[o][static_cast<std::size_t>(n)]);
            row.push_back(summary.se[o][static_cast<std::size_t>(n)]);
        }
        rows.push_back(std::move(row));
    }
    polsim::write_csv(out, columns, rows);
    json cfg = base_config("ensemble", seed, workers);
    cfg["parameters"] = {{"realizations", realizations}, {"layers", layers},
                         {"t", t},                       {"temp_ratio", temp_ratio},
                         {"mean_angle", mean_angle},     {"out", out}};
    polsim::write_json_sidecar(out, cfg);
}

// Output path for the k-th entry of a multi-angle run: stem_k.ext.
std::string indexed_path(const std::string& out, std::size_t k, std::size_t total) {
    if (total <= 1) return out;
    const auto dot = out.rfind('.');
    const std::string stem = (dot == std::string::npos) ? out : out.substr(0, dot);
    const std::string ext = (dot == std::string::npos) ? "" : out.substr(dot);
    return stem + "_" + std::to_string(k) + ext;
}

void write_phi_sweep(const polsim::EraserConfig& config, int phi_points, const std::string& path,
                     json cfg) {
    const auto rows = polsim::phi_sweep(config, phi_points);
    std::vector<std::vector<double>> data;
    for (const auto& r : rows)
        data.push_back({r.phi, r.p_port1, r.p_port2, r.p_port1_cond, r.p_port2_cond});
    polsim::write_csv(path, {"phi", "p_port1", "p_port2", "p_port1_cond", "p_port2_cond"}, data);
    polsim::write_json_sidecar(path, std::move(cfg));
}

void cmd_eraser(const std::string& mode, int phi_points, const std::vector<double>& theta_pols,
                double temp_ratio, const std::vector<double>& temps, double phi, int layers,
                double t, int realizations, std::uint64_t seed, int workers,
                const std::string& out) {
    polsim::EraserConfig config;
    config.layers = layers;
    config.t = t;
    config.seed = seed;
    config.phase = phi;

    json cfg = base_config("eraser", seed, workers);
    cfg["parameters"] = {{"mode", mode},           {"phi_points", phi_points},
                         {"theta_pol", theta_pols}, {"temp_ratio", temp_ratio},
                         {"temps", temps},         {"phi", phi},
                         {"layers", layers},       {"t", t},
                         {"realizations", realizations}, {"out", out}};

    if (mode == "temperature") {
        config.marked = true;
        config.polarizer_angle = theta_pols.front();
        const auto rows = polsim::temperature_sweep(config, temps, realizations, workers);
        std::vector<std::vector<double>> data;
        for (const auto& r : rows)
            data.push_back({r.temperature_ratio, r.mean_p1_cond, r.se_p1, r.mean_p2_cond, r.se_p2});
        polsim::write_csv(out, {"temperature_ratio", "mean_p1_cond", "se_p1", "mean_p2_cond", "se_p2"},
                          data);
        polsim::write_json_sidecar(out, cfg);
        return;
    }

    if (mode == "unmarked") {
        config.marked = false;
        config.measure = false;
        write_phi_sweep(config, phi_points, out, cfg);
    } else if (mode == "marked") {
        config.marked = true;
        config.measure = false;
        write_phi_sweep(config, phi_points, out, cfg);
    } else if (mode == "measured") {
        config.marked = true;
        config.measure = true;
        config.temperature_ratio = temp_ratio;
        // One sweep file per polarizer angle.
        for (std::size_t k = 0; k < theta_pols.size(); ++k) {
            config.polarizer_angle = theta_pols[k];
            json run_cfg = cfg;
            run_cfg["parameters"]["theta_pol"] = theta_pols[k];
            write_phi_sweep(config, phi_points, indexed_path(out, k, theta_pols.size()),
                            std::move(run_cfg));
        }
    } else {
        throw CLI::ValidationError("--mode", "unknown eraser mode '" + mode + "'");
    }
}

void cmd_chi_sweep(double ratio_min, double ratio_max, int points, double t, const std::string& out) {
    std::vector<std::vector<double>> rows;
    for (double ratio : linear_grid(ratio_min, ratio_max, points)) {
        const double x = polsim::chi(ratio);
        rows.push_back({ratio, x, polsim::modified_commutator(t, x)});
    }
    polsim::write_csv(out, {"temperature_ratio", "chi", "commutator"}, rows);
    json cfg = base_config("chi-sweep", 0, 1);
    cfg["parameters"] = {{"ratio_min", ratio_min}, {"ratio_max", ratio_max}, {"points", points},
                         {"t", t},                 {"out", out}};
    polsim::write_json_sidecar(out, cfg);
}

void cmd_pbs_walk(const std::vector<long>& checkpoints, long samples, double delta_p,
                  double mass_energy, double temperature, double hbar_omega, std::uint64_t seed,
                  const std::string& out) {
    polsim::PbsSemiclassicalInput in;
    in.hbar_omega = hbar_omega;
    in.mass_energy = mass_energy;
    in.temperature = temperature;
    double dp = delta_p;
    if (dp <= 0.0) {
        // Minimal distinguishable kick: 2 hw sqrt(k_B T / m c^2) in c = 1 units.
        dp = 2.0 * hbar_omega * std::sqrt(temperature / mass_energy);
    }
    const auto res = polsim::simulate_pbs_momentum_walk(checkpoints, in, dp, samples, seed);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < res.photon_counts.size(); ++i)
        rows.push_back({static_cast<double>(res.photon_counts[i]), res.entropy_change[i],
                        res.standard_error[i], res.closed_form[i], res.kick_variance[i]});
    polsim::write_csv(out, {"photons", "entropy_change", "standard_error", "closed_form",
                            "kick_variance"},
                      rows);
    json cfg = base_config("pbs-walk", seed, 1);
    cfg["parameters"] = {{"checkpoints", checkpoints}, {"samples", samples},
                         {"delta_p", dp},              {"mass_energy", mass_energy},
                         {"temperature", temperature}, {"hbar_omega", hbar_omega},
                         {"out", out}};
    polsim::write_json_sidecar(out, cfg);
}

void cmd_verify_purity(int bath_qubits, long trials, std::uint64_t seed, const std::string& out) {
    const polsim::PurityReport report =
        polsim::verify_purity_bound_small_bath(bath_qubits, trials, seed);
    std::vector<std::vector<double>> rows;
    for (const auto& trial : report.trials)
        rows.push_back({trial.epsilon, trial.purity_before, trial.purity_after, trial.bound,
                        trial.bound_satisfied ? 1.0 : 0.0, trial.assumption_held ? 1.0 : 0.0});
    polsim::write_csv(out, {"epsilon", "purity_before", "purity_after", "bound", "bound_satisfied",
                            "assumption_held"},
                      rows);
    json cfg = base_config("verify-purity", seed, 1);
    cfg["parameters"] = {{"bath_qubits", bath_qubits}, {"trials", trials}, {"out", out}};
    cfg["summary"] = {{"bound_satisfied", report.n_bound_satisfied},
                      {"assumption_held", report.n_assumption_held},
                      {"violations_with_assumption", report.n_violations_with_assumption}};
    polsim::write_json_sidecar(out, cfg);
    std::cout << "trials=" << trials << " bound_satisfied=" << report.n_bound_satisfied
              << " assumption_held=" << report.n_assumption_held
              << " violations_with_assumption=" << report.n_violations_with_assumption << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noisy-polarizer thermodynamics simulations (CSV + JSON sidecar outputs)"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int workers = 1;

    // fig-bounds-alp
    double temp_min = 0.1, temp_max = 100.0, bits = 1.0, hbar_omega = 1.0;
    int alp_points = 200;
    std::string alp_out = "alp_bounds.csv";
    auto* alp = app.add_subcommand("fig-bounds-alp",
                                   "Classical vs quantum polarizer heat bounds per bit erased, "
                                   "swept over k_B T / (hbar omega) (natural units)");
    alp->add_option("--temp-min", temp_min, "lowest k_B T / hbar omega");
    alp->add_option("--temp-max", temp_max, "highest k_B T / hbar omega");
    alp->add_option("--points", alp_points, "grid points (log spaced)");
    alp->add_option("--hbar-omega", hbar_omega, "photon energy (natural units)");
    alp->add_option("--bits", bits, "erased information per step, in bits");
    alp->add_option("--workers", workers, "worker threads (results are independent of this)");
    alp->add_option("--out", alp_out, "output CSV path");

    // fig-bounds-pbs
    double m_min = 1.0, m_max = 1e4, photon_ev = 1.0, temp_kelvin = 300.0, epsilon = 0.0;
    int pbs_points = 200;
    bool use_defaults = false;
    std::string pbs_out = "pbs_bounds.csv";
    auto* pbs = app.add_subcommand("fig-bounds-pbs",
                                   "Semiclassical heat bound vs quantum purity bound for a "
                                   "beamsplitter, swept over device mass in electron masses");
    pbs->add_option("--m-min", m_min, "lowest m / m_e");
    pbs->add_option("--m-max", m_max, "highest m / m_e");
    pbs->add_option("--points", pbs_points, "grid points (log spaced)");
    auto* opt_ev = pbs->add_option("--photon-ev", photon_ev, "photon energy in eV (default 1.0)");
    auto* opt_tk = pbs->add_option("--temp-kelvin", temp_kelvin, "device temperature in K (default 300)");
    auto* opt_eps = pbs->add_option("--epsilon", epsilon, "gate error for the purity bound (default 0)");
    pbs->add_flag("--defaults", use_defaults,
                  "accept the documented defaults for photon energy, temperature and error");
    pbs->add_option("--workers", workers, "worker threads (results are independent of this)");
    pbs->add_option("--out", pbs_out, "output CSV path");

    // collide
    int layers = 10000, stride = 100;
    double t_amp = 0.9, temp_ratio = 0.0, mean_angle = 0.0;
    std::string collide_out = "trajectory.csv";
    auto* collide = app.add_subcommand("collide", "Single collision-model trajectory through the "
                                                  "multilayer polarizer");
    collide->add_option("--layers", layers, "number of layers");
    collide->add_option("--t", t_amp, "amplitude transmission per layer, in [0,1]");
    collide->add_option("--temp-ratio", temp_ratio, "k_B T / kappa (layer-angle variance, rad^2)");
    collide->add_option("--mean-angle", mean_angle, "mean layer angle in radians");
    collide->add_option("--stride", stride, "state validation stride (0 disables)");
    collide->add_option("--seed", seed, "RNG seed");
    collide->add_option("--workers", workers, "worker threads (results are independent of this)");
    collide->add_option("--out", collide_out, "output CSV path");

    // ensemble
    int realizations = 100;
    std::string ensemble_out = "ensemble.csv";
    auto* ensemble = app.add_subcommand("ensemble", "Ensemble of collision-model trajectories; "
                                                    "per-layer means and standard errors");
    ensemble->add_option("--realizations", realizations, "number of independent trajectories");
    ensemble->add_option("--layers", layers, "number of layers");
    ensemble->add_option("--t", t_amp, "amplitude transmission per layer, in [0,1]");
    ensemble->add_option("--temp-ratio", temp_ratio, "k_B T / kappa (layer-angle variance, rad^2)");
    ensemble->add_option("--mean-angle", mean_angle, "mean layer angle in radians");
    ensemble->add_option("--seed", seed, "RNG seed");
    ensemble->add_option("--workers", workers, "worker threads");
    ensemble->add_option("--out", ensemble_out, "output CSV path");

    // eraser
    std::string eraser_mode = "unmarked";
    int phi_points = 64;
    std::vector<double> theta_pols = {std::numbers::pi / 4.0};
    double eraser_temp = 0.0, phi = std::numbers::pi / 2.0;
    int eraser_layers = 1000, eraser_realizations = 1000;
    double eraser_t = 0.9;
    std::vector<double> temps = {0.0, 0.0025, 0.01, 0.04, 0.09, 0.16, 0.25};
    std::string eraser_out = "eraser.csv";
    auto* eraser = app.add_subcommand("eraser", "Quantum-eraser interferometer sweeps");
    eraser->add_option("--mode", eraser_mode, "unmarked | marked | measured | temperature");
    eraser->add_option("--phi-points", phi_points, "phase grid points in [0, 2 pi)");
    eraser->add_option("--theta-pol", theta_pols,
                       "signal polarizer transmission-axis angle(s), radians; mode=measured "
                       "writes one sweep file per angle")
        ->delimiter(',');
    eraser->add_option("--temp-ratio", eraser_temp, "k_B T / kappa for mode=measured");
    eraser->add_option("--temps", temps, "temperature grid for mode=temperature")->delimiter(',');
    eraser->add_option("--phi", phi, "interferometer phase for mode=temperature (rad)");
    eraser->add_option("--layers", eraser_layers, "polarizer layers");
    eraser->add_option("--t", eraser_t, "amplitude transmission per layer");
    eraser->add_option("--realizations", eraser_realizations, "realizations per temperature");
    eraser->add_option("--seed", seed, "RNG seed");
    eraser->add_option("--workers", workers, "worker threads");
    eraser->add_option("--out", eraser_out, "output CSV path");

    // chi-sweep
    double ratio_min = 0.0, ratio_max = 2.0;
    int chi_points = 201;
    double chi_t = 0.9;
    std::string chi_out = "chi.csv";
    auto* chi_cmd = app.add_subcommand("chi-sweep", "Thermal decoherence parameter chi and the "
                                                    "modified commutator vs k_B T / kappa");
    chi_cmd->add_option("--ratio-min", ratio_min, "lowest k_B T / kappa");
    chi_cmd->add_option("--ratio-max", ratio_max, "highest k_B T / kappa");
    chi_cmd->add_option("--points", chi_points, "grid points (linear)");
    chi_cmd->add_option("--t", chi_t, "amplitude transmission");
    chi_cmd->add_option("--workers", workers, "worker threads (results are independent of this)");
    chi_cmd->add_option("--out", chi_out, "output CSV path");

    // pbs-walk
    std::vector<long> checkpoints = {10, 100, 1000, 10000};
    long samples = 100000;
    double delta_p = 0.0, walk_mass = 100.0, walk_temp = 1.0, walk_hw = 1.0;
    std::string walk_out = "walk.csv";
    auto* walk = app.add_subcommand("pbs-walk", "Momentum random walk of the beamsplitter under "
                                                "photon reflections; Gaussian-fit entropy growth");
    walk->add_option("--checkpoints", checkpoints, "photon counts to report")->delimiter(',');
    walk->add_option("--samples", samples, "Monte Carlo samples");
    walk->add_option("--delta-p", delta_p, "momentum kick per reflection (0 = minimal kick)");
    walk->add_option("--mass-energy", walk_mass, "m c^2 (natural units)");
    walk->add_option("--temperature", walk_temp, "k_B T (natural units)");
    walk->add_option("--hbar-omega", walk_hw, "photon energy (natural units)");
    walk->add_option("--seed", seed, "RNG seed");
    walk->add_option("--workers", workers, "worker threads (results are independent of this)");
    walk->add_option("--out", walk_out, "output CSV path");

    // verify-purity
    int bath_qubits = 1;
    long trials = 10000;
    std::string purity_out = "purity_trials.csv";
    auto* verify = app.add_subcommand("verify-purity", "Sample Z-conserving unitaries on a small "
                                                       "bath and test the purity-loss bound");
    verify->add_option("--bath-qubits", bath_qubits, "bath size N in 1..3");
    verify->add_option("--trials", trials, "sampled unitaries");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--workers", workers, "worker threads (results are independent of this)");
    verify->add_option("--out", purity_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*alp) {
            cmd_fig_bounds_alp(temp_min, temp_max, alp_points, hbar_omega, bits, alp_out);
        } else if (*pbs) {
            const bool any_given = opt_ev->count() || opt_tk->count() || opt_eps->count();
            if (!any_given && !use_defaults)
                throw std::invalid_argument(
                    "fig-bounds-pbs: the source figure does not state photon energy, temperature "
                    "or gate error; pass --photon-ev/--temp-kelvin/--epsilon or accept the "
                    "documented defaults (1 eV, 300 K, 0) with --defaults");
            cmd_fig_bounds_pbs(m_min, m_max, pbs_points, photon_ev, temp_kelvin, epsilon, pbs_out);
        } else if (*collide) {
            cmd_collide(layers, t_amp, temp_ratio, mean_angle, seed, stride, collide_out);
        } else if (*ensemble) {
            cmd_ensemble(realizations, layers, t_amp, temp_ratio, mean_angle, seed, workers,
                         ensemble_out);
        } else if (*eraser) {
            cmd_eraser(eraser_mode, phi_points, theta_pols, eraser_temp, temps, phi,
                       eraser_layers, eraser_t, eraser_realizations, seed, workers, eraser_out);
        } else if (*chi_cmd) {
            cmd_chi_sweep(ratio_min, ratio_max, chi_points, chi_t, chi_out);
        } else if (*walk) {
            cmd_pbs_walk(checkpoints, samples, delta_p, walk_mass, walk_temp, walk_hw, seed,
                         walk_out);
        } else if (*verify) {
            cmd_verify_purity(bath_qubits, trials, seed, purity_out);
        }
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
