#pragma once

#include <functional>

#include "geoquad/config.hpp"
#include "geoquad/noise.hpp"
#include "geoquad/report.hpp"

namespace geoquad {

/// 0 or negative -> hardware concurrency (at least 1).
int resolve_threads(int requested);

/// Runs body(i) for i in [0, n) on a worker pool. Cells are independent;
/// exceptions are captured per index and returned as messages (empty string
/// means success), so a failed cell never aborts the sweep.
std::vector<std::string> parallel_run(std::size_t n, int threads,
                                      const std::function<void(std::size_t)>& body);

double angular_factor_from_config(const Config& cfg);
DQDParams dqd_params_from_config(const Config& cfg, const DQDParams& defaults);
std::vector<Protocol> protocols_from_config(const Config& cfg,
                                            const std::vector<Protocol>& fallback);
Axis axis_from_config(const Config& cfg, const std::string& name, double lo, double hi,
                      int count, bool log_spacing);

/// Two-level anti-crossing transfer-error curves vs pulse time, for the
/// linear, geometric, and analytic-angle protocols.
ExperimentReport run_fig2(const Config& cfg);

/// Full 6x6 initialization: the geometric pulse is synthesized on the
/// truncated two-level model and propagated under the full Hamiltonian.
ExperimentReport run_fig3(const Config& cfg);

/// Transfer-error grids over two of {omega, de_z, t_f} on the three-level
/// model, one error column per protocol.
ExperimentReport run_transfer_grid(const Config& cfg);

/// Quasistatic boundary-offset sweep (fidelity and deviation per offset).
ExperimentReport run_quasistatic(const Config& cfg);

/// Pulse-miscalibration grid over (t_f, delta_omega).
ExperimentReport run_miscal(const Config& cfg);

/// Uhlmann fidelity grid over (T2, t_f) per protocol under dephasing.
ExperimentReport run_optimal_time(const Config& cfg);

/// Per-T2 argmax extraction from the run_optimal_time grid.
ExperimentReport optimal_time_summary(const ExperimentReport& grid);

/// Population and fidelity time series per protocol and T2, with noiseless
/// (unitary) reference columns.
ExperimentReport run_population_trace(const Config& cfg);

/// Dispatch on [experiment] kind.
ExperimentReport run_experiment(const Config& cfg);

/// Runs the configured experiment and writes CSV/JSON/SVG artifacts into
/// out_dir; returns the written paths.
std::vector<std::string> run_and_emit(const Config& cfg, const std::string& out_dir);

}  // namespace geoquad
