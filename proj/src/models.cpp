#include "geoquad/models.hpp"

#include <cmath>

namespace geoquad {

ComplexMatrix fd_derivative(const ParametricHamiltonian& model, const RealVector& x, int mu,
                            double dx) {
    RealVector xp = x, xm = x;
    xp[mu] += dx;
    xm[mu] -= dx;
    return (model.h_at(xp) - model.h_at(xm)) / (2.0 * dx);
}

namespace {

ComplexMatrix pauli_matrix(double rho, double phi, double z) {
    ComplexMatrix H(2, 2);
    const Complex off = rho * std::exp(Complex(0.0, -phi));
    H << Complex(z, 0.0), off, std::conj(off), Complex(-z, 0.0);
    return H;
}

ComplexMatrix pauli_drho(double phi) {
    ComplexMatrix D(2, 2);
    const Complex off = std::exp(Complex(0.0, -phi));
    D << Complex(0.0, 0.0), off, std::conj(off), Complex(0.0, 0.0);
    return D;
}

ComplexMatrix pauli_dphi(double rho, double phi) {
    ComplexMatrix D(2, 2);
    const Complex off = Complex(0.0, -rho) * std::exp(Complex(0.0, -phi));
    D << Complex(0.0, 0.0), off, std::conj(off), Complex(0.0, 0.0);
    return D;
}

ComplexMatrix pauli_dz() {
    ComplexMatrix D(2, 2);
    D << Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(-1.0, 0.0);
    return D;
}

double fixed_or(const std::map<std::string, double>& fixed, const std::string& name,
                double fallback) {
    auto it = fixed.find(name);
    return it == fixed.end() ? fallback : it->second;
}

}  // namespace

ParametricHamiltonian pauli_model(PauliMode mode, std::map<std::string, double> fixed,
                                  double angular_factor) {
    ParametricHamiltonian m;
    m.dim = 2;
    const double f = angular_factor;
    switch (mode) {
        case PauliMode::Cylindrical: {
            m.param_names = {"rho", "phi", "z"};
            m.fixed_params = fixed;
            m.h = [f](const RealVector& x) -> ComplexMatrix {
                return f * pauli_matrix(x[0], x[1], x[2]);
            };
            m.dh = [f](const RealVector& x, int mu) -> ComplexMatrix {
                switch (mu) {
                    case 0: return f * pauli_drho(x[1]);
                    case 1: return f * pauli_dphi(x[0], x[1]);
                    default: return f * pauli_dz();
                }
            };
            break;
        }
        case PauliMode::Bloch: {
            const double r = fixed_or(fixed, "r", 1.0);
            m.param_names = {"theta", "phi"};
            m.fixed_params = fixed;
            m.fixed_params["r"] = r;
            m.h = [f, r](const RealVector& x) -> ComplexMatrix {
                return f * pauli_matrix(r * std::sin(x[0]), x[1], r * std::cos(x[0]));
            };
            m.dh = [f, r](const RealVector& x, int mu) -> ComplexMatrix {
                const double theta = x[0], phi = x[1];
                if (mu == 0) {
                    // d/dtheta of r(sin,cos): rho' = r cos, z' = -r sin
                    return f * (r * std::cos(theta) * pauli_drho(phi) -
                                r * std::sin(theta) * pauli_dz());
                }
                return f * pauli_dphi(r * std::sin(theta), phi);
            };
            break;
        }
        case PauliMode::RhoOnly: {
            const double phi = fixed_or(fixed, "phi", 0.0);
            const double z = fixed_or(fixed, "z", 0.0);
            m.param_names = {"rho"};
            m.fixed_params = {{"phi", phi}, {"z", z}};
            m.h = [f, phi, z](const RealVector& x) -> ComplexMatrix {
                return f * pauli_matrix(x[0], phi, z);
            };
            m.dh = [f, phi](const RealVector&, int) -> ComplexMatrix { return f * pauli_drho(phi); };
            break;
        }
        case PauliMode::RhoPhi: {
            const double z = fixed_or(fixed, "z", 0.0);
            m.param_names = {"rho", "phi"};
            m.fixed_params = {{"z", z}};
            m.h = [f, z](const RealVector& x) -> ComplexMatrix {
                return f * pauli_matrix(x[0], x[1], z);
            };
            m.dh = [f](const RealVector& x, int mu) -> ComplexMatrix {
                return mu == 0 ? ComplexMatrix(f * pauli_drho(x[1]))
                               : ComplexMatrix(f * pauli_dphi(x[0], x[1]));
            };
            break;
        }
    }
    return m;
}

ParametricHamiltonian dqd3_model(const DQDParams& params) {
    if (!(params.u_tilde > 0.0)) throw std::invalid_argument("dqd3_model: u_tilde must be > 0");
    ParametricHamiltonian m;
    m.dim = 3;
    m.param_names = {"epsilon"};
    m.fixed_params = {{"u_tilde", params.u_tilde}, {"omega", params.omega}, {"de_z", params.de_z}};
    const double f = params.angular_factor;
    const double u = params.u_tilde, w = params.omega, dz = params.de_z;
    m.h = [f, u, w, dz](const RealVector& x) -> ComplexMatrix {
        ComplexMatrix H = ComplexMatrix::Zero(3, 3);
        H(0, 0) = u - x[0];
        H(0, 1) = H(1, 0) = w;
        H(1, 2) = H(2, 1) = dz;
        return f * H;
    };
    m.dh = [f](const RealVector&, int) -> ComplexMatrix {
        ComplexMatrix D = ComplexMatrix::Zero(3, 3);
        D(0, 0) = -1.0;
        return f * D;
    };
    return m;
}

ParametricHamiltonian dqd6_model(const DQDParams& params) {
    if (!(params.u_tilde > 0.0)) throw std::invalid_argument("dqd6_model: u_tilde must be > 0");
    ParametricHamiltonian m;
    m.dim = 6;
    m.param_names = {"epsilon"};
    m.fixed_params = {{"u_tilde", params.u_tilde},
                      {"omega", params.omega},
                      {"e_z", params.e_z},
                      {"de_z", params.de_z},
                      {"de_x", params.de_x}};
    const double f = params.angular_factor;
    const double u = params.u_tilde, w = params.omega, ez = params.e_z, dz = params.de_z,
                 dx = params.de_x;
    // Basis: S(0,2), S(2,0), |uu>, |ud>, |du>, |dd>.
    m.h = [f, u, w, ez, dz, dx](const RealVector& x) -> ComplexMatrix {
        const double eps = x[0];
        ComplexMatrix H = ComplexMatrix::Zero(6, 6);
        H(0, 0) = u + eps;
        H(1, 1) = u - eps;
        H(2, 2) = ez;
        H(3, 3) = dz;
        H(4, 4) = -dz;
        H(5, 5) = -ez;
        H(0, 3) = H(3, 0) = -w;
        H(0, 4) = H(4, 0) = w;
        H(1, 3) = H(3, 1) = -w;
        H(1, 4) = H(4, 1) = w;
        H(2, 3) = H(3, 2) = dx;
        H(2, 4) = H(4, 2) = -dx;
        H(3, 5) = H(5, 3) = dx;
        H(4, 5) = H(5, 4) = -dx;
        return f * H;
    };
    m.dh = [f](const RealVector&, int) -> ComplexMatrix {
        ComplexMatrix D = ComplexMatrix::Zero(6, 6);
        D(0, 0) = 1.0;
        D(1, 1) = -1.0;
        return f * D;
    };
    return m;
}

ParametricHamiltonian sw2_model(double omega, double de_z, double angular_factor) {
    const double j2 = (de_z * de_z) / (omega * omega);
    if (!(j2 < 1.0))
        throw ExpansionInvalid("sw2_model: |dE_Z/Omega| must be < 1 for the expansion");
    ParametricHamiltonian m;
    m.dim = 2;
    m.param_names = {"epsilon"};
    m.fixed_params = {{"omega", omega}, {"de_z", de_z}};
    const double f = angular_factor;
    const double diag_scale = 1.0 - j2;
    const double coupling = omega * (1.0 - j2 / 2.0);
    m.h = [f, diag_scale, coupling](const RealVector& x) -> ComplexMatrix {
        ComplexMatrix H = ComplexMatrix::Zero(2, 2);
        H(0, 0) = -x[0] * diag_scale;
        H(0, 1) = H(1, 0) = coupling;
        return f * H;
    };
    m.dh = [f, diag_scale](const RealVector&, int) -> ComplexMatrix {
        ComplexMatrix D = ComplexMatrix::Zero(2, 2);
        D(0, 0) = -diag_scale;
        return f * D;
    };
    return m;
}

ParametricHamiltonian truncate_two_level(const ParametricHamiltonian& model, const RealVector& x) {
    if (model.dim < 2) throw ShapeMismatch("truncate_two_level: model needs at least 2 levels");
    if (model.dim == 2) return model;

    {
        const EigenSystem es = eigensystem(model.h_at(x));
        const double scale = std::max(es.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
        if (es.eigenvalues[2] - es.eigenvalues[1] <= 1e-12 * scale)
            throw DegenerateSpectrum("truncate_two_level: E2-E1 degenerate at projection point");
    }

    auto basis_at = [model](const RealVector& xe) -> ComplexMatrix {
        const EigenSystem es = eigensystem(model.h_at(xe));
        return es.eigenvectors.leftCols(2);
    };

    ParametricHamiltonian t;
    t.dim = 2;
    t.param_names = model.param_names;
    t.fixed_params = model.fixed_params;
    t.h = [model, basis_at](const RealVector& xe) -> ComplexMatrix {
        const ComplexMatrix P = basis_at(xe);
        return P.adjoint() * model.h_at(xe) * P;
    };
    t.dh = [model, basis_at](const RealVector& xe, int mu) -> ComplexMatrix {
        const ComplexMatrix P = basis_at(xe);
        return P.adjoint() * model.dh_at(xe, mu) * P;
    };
    return t;
}

}  // namespace geoquad
