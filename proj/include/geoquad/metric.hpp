#pragma once

#include "geoquad/models.hpp"

namespace geoquad {

/// Quantum geometric tensor at a point: real metric part g and imaginary
/// Berry part, both over the model's active parameters.
struct GeoTensor {
    RealMatrix g;      // symmetric, positive semidefinite
    RealMatrix berry;  // antisymmetric
    int level = 0;
    RealVector x;
};

/// Spectral-sum form: g + i*berry = sum_{n != level}
/// <l|dH_mu|n><n|dH_nu|l> / (E_n - E_l)^2. Production path; needs no
/// eigenvector derivatives. Throws DegenerateSpectrum when the target level
/// gap falls below 1e-10 * ||H||.
GeoTensor qgt_spectral(const ParametricHamiltonian& model, const RealVector& x, int level);

/// Density-matrix tangent-basis form: g_{mu nu} = 1/2 tr(t_mu t_nu) with
/// t_mu = d_mu rho built from gauge-fixed eigenvector finite differences.
/// Independent cross-check of qgt_spectral.
GeoTensor qgt_tangent(const ParametricHamiltonian& model, const RealVector& x, int level,
                      double fd_step = 1e-5);

/// Overlap-infidelity oracle: 2 (1 - |<psi(x-dx/2)|psi(x+dx/2)>|^2) / |dx|^2,
/// the metric contracted along direction dx (symmetrized three-point form).
double qgt_fd_oracle(const ParametricHamiltonian& model, const RealVector& x,
                     const RealVector& dx, int level);

/// Coordinate change: g' = J^T g J, berry' = J^T berry J.
GeoTensor pullback(const GeoTensor& gt, const RealMatrix& jacobian);

struct SingularReport {
    bool singular = false;
    double det = 0.0;
};
SingularReport check_singular(const GeoTensor& gt);

/// g_eps_eps of a single-parameter model; the integrand of path_length and
/// the right-hand side of the fast-QUAD equation.
double metric_scalar(const ParametricHamiltonian& model, double eps, int level);

}  // namespace geoquad
