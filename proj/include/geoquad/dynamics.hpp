#pragma once

#include "geoquad/pulse.hpp"

namespace geoquad {

struct SchrodingerResult {
    std::vector<double> times;
    std::vector<ComplexVector> states;  // at stored samples (stride-controlled)
    ComplexVector final_state;
    double norm_drift = 0.0;  // max | ||psi|| - 1 | before final renormalization
};

/// Midpoint piecewise-constant exponential stepping:
/// psi_{k+1} = exp(-i H(eps(t_k + dt/2)) dt) psi_k. Exactly unitary per step.
/// store_stride 0 keeps only the final state.
SchrodingerResult propagate_schrodinger(const ParametricHamiltonian& model,
                                        const PulseSchedule& schedule, const ComplexVector& psi0,
                                        int steps = 20000, int store_stride = 0);

/// Starts in the instantaneous eigenvector `level` at eps(0), propagates, and
/// projects onto the instantaneous eigenvector `level` at target_eps
/// (defaults to eps(t_f) when NaN).
double transfer_probability(const ParametricHamiltonian& model, const PulseSchedule& schedule,
                            int level = 0, int steps = 20000,
                            double target_eps = std::numeric_limits<double>::quiet_NaN());

struct JumpOperator {
    ComplexMatrix matrix;
    std::string label;
};

/// sqrt(1/2T2) diag(1, -1, -1): dephasing between the (2,0) charge state and
/// the (1,1) subspace of the three-level model.
JumpOperator dephasing_jump_block(double t2);

/// sqrt(2/T2) diag(1, 0, 0): the shifted, equivalent form (projector on
/// S(2,0)).
JumpOperator dephasing_jump_projector(double t2);

/// Row-vectorized Lindblad generator (d^2 x d^2):
/// L = -i (H (x) I - I (x) H^T)
///     + sum_j [ L_j (x) L_j^* - 1/2 (L_j^+ L_j (x) I + I (x) (L_j^+ L_j)^T) ].
ComplexMatrix lindblad_superoperator(const ComplexMatrix& H,
                                     const std::vector<JumpOperator>& jumps);

/// Dissipator-only part of the superoperator (constant across time steps).
ComplexMatrix lindblad_dissipator(int dim, const std::vector<JumpOperator>& jumps);

struct LindbladResult {
    std::vector<double> times;
    std::vector<ComplexMatrix> rhos;  // at stored samples
    ComplexMatrix final_rho;
    double trace_drift = 0.0;
    double hermiticity_drift = 0.0;  // max symmetrization correction
};

/// Steps vec_row(rho) with expm(L(t_k + dt/2) dt) per step; rho is
/// re-symmetrized each step (drift logged, hard error above 1e-6) and the
/// final state is checked for positivity (min eigenvalue >= -1e-6).
LindbladResult propagate_lindblad(const ParametricHamiltonian& model,
                                  const PulseSchedule& schedule,
                                  const std::vector<JumpOperator>& jumps,
                                  const ComplexMatrix& rho0, int steps = 20000,
                                  int store_stride = 0);

/// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double uhlmann_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Rank-1 shortcut: <psi|rho|psi>.
double uhlmann_fidelity(const ComplexMatrix& rho, const ComplexVector& psi);

/// Gauge-fixed instantaneous eigenvector of a single-parameter model.
ComplexVector instantaneous_eigvec(const ParametricHamiltonian& model, double eps, int level);

}  // namespace geoquad
