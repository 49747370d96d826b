#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "geoquad/linalg.hpp"

namespace geoquad {

/// A Hamiltonian family H(x) over a small set of swept parameters, with
/// analytic parameter derivatives. Immutable after construction; evaluation
/// is pure and thread-safe.
struct ParametricHamiltonian {
    int dim = 0;
    std::vector<std::string> param_names;        // active (swept) parameters
    std::map<std::string, double> fixed_params;  // energies held constant
    std::function<ComplexMatrix(const RealVector&)> h;
    std::function<ComplexMatrix(const RealVector&, int)> dh;

    ComplexMatrix h_at(const RealVector& x) const { return h(x); }
    ComplexMatrix dh_at(const RealVector& x, int mu) const { return dh(x, mu); }
    int n_params() const { return static_cast<int>(param_names.size()); }
};

/// Central finite difference of h_at, the generic fallback/oracle for dh_at.
ComplexMatrix fd_derivative(const ParametricHamiltonian& model, const RealVector& x, int mu,
                            double dx = 1e-4);

enum class PauliMode {
    Cylindrical,  // active (rho, phi, z)
    Bloch,        // active (theta, phi), fixed radius r
    RhoOnly,      // active rho, fixed phi and z
    RhoPhi,       // active (rho, phi), fixed z
};

/// Two-level Hamiltonian [[z, rho e^{-i phi}], [rho e^{i phi}, -z]] in the
/// requested coordinate chart. Missing fixed values default to
/// phi = 0, z = 0, r = 1.
ParametricHamiltonian pauli_model(PauliMode mode, std::map<std::string, double> fixed = {},
                                  double angular_factor = 1.0);

struct DQDParams {
    double u_tilde = 100.0;  // intra-dot Coulomb energy
    double omega = 1.0;      // tunnel coupling
    double e_z = 10.0;       // total Zeeman energy
    double de_z = 1.0;       // Zeeman splitting difference
    double de_x = 0.1;       // transverse Zeeman difference
    double angular_factor = 1.0;
};

/// Three-level singlet/triplet model in the basis (S(2,0), S(1,1), T0(1,1));
/// the detuning epsilon is the single swept parameter.
ParametricHamiltonian dqd3_model(const DQDParams& params);

/// Full 6x6 double-dot model over the (0,2)/(2,0) singlets and the four
/// (1,1) spin states; swept parameter epsilon.
ParametricHamiltonian dqd6_model(const DQDParams& params);

/// Schrieffer-Wolff effective two-level model,
/// [[-eps (1-J^2), Omega (1-J^2/2)], [Omega (1-J^2/2), 0]] with
/// J = dE_Z / Omega. Throws ExpansionInvalid for |J| >= 1.
ParametricHamiltonian sw2_model(double omega, double de_z, double angular_factor = 1.0);

/// Projects a model onto the span of its two lowest instantaneous
/// eigenvectors; the basis is recomputed (and gauge-fixed) at every
/// evaluation point. The derivative projects dh onto the same basis.
/// `x` is where the E2-E1 gap is validated at construction.
ParametricHamiltonian truncate_two_level(const ParametricHamiltonian& model, const RealVector& x);

/// Convenience for single-parameter models.
inline RealVector scalar_point(double value) {
    RealVector x(1);
    x[0] = value;
    return x;
}

}  // namespace geoquad
