#pragma once

#include "geoquad/dynamics.hpp"

namespace geoquad {

/// Quasistatic detuning-fluctuation ensemble. If fixed_offsets is nonempty
/// it is used verbatim (deterministic sweep); otherwise n_samples Gaussian
/// draws with standard deviation sigma are generated from the seed.
struct QuasistaticSpec {
    double sigma = 0.0;
    std::vector<double> fixed_offsets;
    uint64_t seed = 0;
    int n_samples = 1;
};

struct QuasistaticResult {
    std::vector<double> offsets;
    std::vector<double> fidelities;
    std::vector<double> deviations;  // F_noisy - F_noiseless
    double noiseless_fidelity = 0.0;
};

/// For each offset: shift both pulse boundary conditions by the offset,
/// re-synthesize the pulse, propagate under the UNSHIFTED system
/// Hamiltonian, and report fidelity against the eigenstate at the nominal
/// final detuning. With additive_mode the offset instead enters as a
/// constant -offset * dH perturbation during evolution (exploration only).
QuasistaticResult quasistatic_run(const ParametricHamiltonian& model, Protocol protocol,
                                  double eps0, double eps_f, double t_f,
                                  const QuasistaticSpec& spec, int level = 0, int steps = 20000,
                                  int pulse_samples = 20001, bool additive_mode = false);

struct MiscalibrationSpec {
    double omega_system = 3.0;  // true tunnel coupling
    std::vector<double> delta_omega_list;
};

struct MiscalResult {
    std::vector<double> t_f_list;
    std::vector<double> delta_omega;
    std::vector<double> calibrated_fidelity;  // per t_f
    std::vector<double> fidelity;             // row-major (t_f x delta_omega)
    std::vector<double> deviation;            // fidelity - calibrated, same layout
};

/// Synthesizes the geometric pulse with Omega + dOmega, evolves under the
/// system at Omega, and reports the deviation from the calibrated result.
MiscalResult miscalibration_run(const DQDParams& base, const MiscalibrationSpec& spec,
                                const std::vector<double>& t_f_list, double eps0, double eps_f,
                                int level = 0, int steps = 20000, int pulse_samples = 20001);

}  // namespace geoquad
