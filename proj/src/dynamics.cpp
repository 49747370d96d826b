#include "geoquad/dynamics.hpp"

#include <cmath>

namespace geoquad {

ComplexVector instantaneous_eigvec(const ParametricHamiltonian& model, double eps, int level) {
    const EigenSystem es = eigensystem(model.h_at(scalar_point(eps)));
    return es.eigenvectors.col(level);
}

SchrodingerResult propagate_schrodinger(const ParametricHamiltonian& model,
                                        const PulseSchedule& schedule, const ComplexVector& psi0,
                                        int steps, int store_stride) {
    if (steps < 2) throw std::invalid_argument("propagate_schrodinger: steps must be >= 2");
    if (std::abs(psi0.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate_schrodinger: psi0 not normalized");

    const double dt = schedule.t_f / steps;
    ComplexVector psi = psi0;
    SchrodingerResult result;
    if (store_stride > 0) {
        result.times.push_back(0.0);
        result.states.push_back(psi);
    }
    double prev_eps = std::numeric_limits<double>::quiet_NaN();
    ComplexMatrix U;
    double drift = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double eps_mid = schedule.eval((k + 0.5) * dt);
        if (eps_mid != prev_eps) {
            U = expm_unitary(model.h_at(scalar_point(eps_mid)), dt);
            prev_eps = eps_mid;
        }
        psi = U * psi;
        drift = std::max(drift, std::abs(psi.norm() - 1.0));
        if (store_stride > 0 && ((k + 1) % store_stride == 0 || k + 1 == steps)) {
            result.times.push_back((k + 1) * dt);
            result.states.push_back(psi);
        }
    }
    result.norm_drift = drift;
    psi /= psi.norm();
    result.final_state = psi;
    return result;
}

double transfer_probability(const ParametricHamiltonian& model, const PulseSchedule& schedule,
                            int level, int steps, double target_eps) {
    const ComplexVector psi0 = instantaneous_eigvec(model, schedule.eval(0.0), level);
    const auto result = propagate_schrodinger(model, schedule, psi0, steps);
    const double eps_end = std::isnan(target_eps) ? schedule.eval(schedule.t_f) : target_eps;
    const ComplexVector target = instantaneous_eigvec(model, eps_end, level);
    return std::norm(target.dot(result.final_state));
}

JumpOperator dephasing_jump_block(double t2) {
    if (!(t2 > 0.0)) throw InvalidT2("dephasing_jump_block: T2 must be > 0");
    ComplexMatrix L = ComplexMatrix::Zero(3, 3);
    const double c = std::sqrt(1.0 / (2.0 * t2));
    L(0, 0) = c;
    L(1, 1) = -c;
    L(2, 2) = -c;
    return {L, "dephasing_block"};
}

JumpOperator dephasing_jump_projector(double t2) {
    if (!(t2 > 0.0)) throw InvalidT2("dephasing_jump_projector: T2 must be > 0");
    ComplexMatrix L = ComplexMatrix::Zero(3, 3);
    L(0, 0) = std::sqrt(2.0 / t2);
    return {L, "dephasing_projector"};
}

ComplexMatrix lindblad_dissipator(int dim, const std::vector<JumpOperator>& jumps) {
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    ComplexMatrix D = ComplexMatrix::Zero(dim * dim, dim * dim);
    for (const auto& jump : jumps) {
        const ComplexMatrix& L = jump.matrix;
        if (L.rows() != dim || L.cols() != dim)
            throw ShapeMismatch("lindblad_dissipator: jump operator shape mismatch");
        const ComplexMatrix LdL = L.adjoint() * L;
        D += kron(L, L.conjugate());
        D -= 0.5 * kron(LdL, id);
        D -= 0.5 * kron(id, LdL.transpose());
    }
    return D;
}

ComplexMatrix lindblad_superoperator(const ComplexMatrix& H,
                                     const std::vector<JumpOperator>& jumps) {
    if (H.rows() != H.cols()) throw ShapeMismatch("lindblad_superoperator: H not square");
    if (!is_hermitian(H)) throw NotHermitian("lindblad_superoperator: H not Hermitian");
    const int dim = static_cast<int>(H.rows());
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    const Complex i_unit(0.0, 1.0);
    ComplexMatrix sup = -i_unit * (kron(H, id) - kron(id, H.transpose()));
    sup += lindblad_dissipator(dim, jumps);
    return sup;
}

LindbladResult propagate_lindblad(const ParametricHamiltonian& model,
                                  const PulseSchedule& schedule,
                                  const std::vector<JumpOperator>& jumps,
                                  const ComplexMatrix& rho0, int steps, int store_stride) {
    if (steps < 2) throw std::invalid_argument("propagate_lindblad: steps must be >= 2");
    const int dim = model.dim;
    if (rho0.rows() != dim || rho0.cols() != dim)
        throw ShapeMismatch("propagate_lindblad: rho0 shape mismatch");
    if (!is_hermitian(rho0, 1e-9) || std::abs(rho0.trace().real() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate_lindblad: rho0 not a valid density matrix");

    const double dt = schedule.t_f / steps;
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix dissipator = lindblad_dissipator(dim, jumps);
    const Complex i_unit(0.0, 1.0);

    ComplexMatrix rho = (rho0 + rho0.adjoint()) / 2.0;
    LindbladResult result;
    if (store_stride > 0) {
        result.times.push_back(0.0);
        result.rhos.push_back(rho);
    }
    double prev_eps = std::numeric_limits<double>::quiet_NaN();
    ComplexMatrix stepper;
    for (int k = 0; k < steps; ++k) {
        const double eps_mid = schedule.eval((k + 0.5) * dt);
        if (eps_mid != prev_eps) {
            const ComplexMatrix H = model.h_at(scalar_point(eps_mid));
            const ComplexMatrix sup =
                -i_unit * (kron(H, id) - kron(id, H.transpose())) + dissipator;
            stepper = expm_general(sup * dt);
            prev_eps = eps_mid;
        }
        rho = unvec_row(stepper * vec_row(rho));
        const ComplexMatrix sym = (rho + rho.adjoint()) / 2.0;
        const double herm = (rho - sym).norm();
        result.hermiticity_drift = std::max(result.hermiticity_drift, herm);
        if (herm > 1e-6)
            throw PositivityViolation("propagate_lindblad: Hermiticity drift above 1e-6");
        rho = sym;
        result.trace_drift =
            std::max(result.trace_drift, std::abs(rho.trace().real() - 1.0));
        if (store_stride > 0 && ((k + 1) % store_stride == 0 || k + 1 == steps)) {
            result.times.push_back((k + 1) * dt);
            result.rhos.push_back(rho);
        }
    }
    const EigenSystem es = eigensystem(rho);
    if (es.eigenvalues.minCoeff() < -1e-6)
        throw PositivityViolation("propagate_lindblad: final state not positive");
    result.final_rho = rho;
    return result;
}

double uhlmann_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw ShapeMismatch("uhlmann_fidelity: shape mismatch");
    const EigenSystem es = eigensystem(rho);
    RealVector roots = es.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix sqrt_rho =
        es.eigenvectors * roots.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
    const ComplexMatrix inner = sqrt_rho * sigma * sqrt_rho;
    const EigenSystem esi = eigensystem((inner + inner.adjoint()) / 2.0);
    double sum = 0.0;
    for (int k = 0; k < esi.eigenvalues.size(); ++k)
        sum += std::sqrt(std::max(esi.eigenvalues[k], 0.0));
    return sum * sum;
}

double uhlmann_fidelity(const ComplexMatrix& rho, const ComplexVector& psi) {
    if (rho.rows() != psi.size()) throw ShapeMismatch("uhlmann_fidelity: shape mismatch");
    return std::abs((psi.adjoint() * rho * psi)(0, 0).real());
}

}  // namespace geoquad
