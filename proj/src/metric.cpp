#include "geoquad/metric.hpp"

#include <cmath>

namespace geoquad {

namespace {

void require_nondegenerate(const EigenSystem& es, int level, const char* where) {
    const double scale = std::max(es.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
    if (es.gap_to(level) <= 1e-10 * scale)
        throw DegenerateSpectrum(std::string(where) + ": target level is degenerate");
}

ComplexVector level_state(const ParametricHamiltonian& model, const RealVector& x, int level,
                          const char* where) {
    const EigenSystem es = eigensystem(model.h_at(x));
    require_nondegenerate(es, level, where);
    return es.eigenvectors.col(level);
}

}  // namespace

GeoTensor qgt_spectral(const ParametricHamiltonian& model, const RealVector& x, int level) {
    const int np = model.n_params();
    const EigenSystem es = eigensystem(model.h_at(x));
    require_nondegenerate(es, level, "qgt_spectral");

    // w_mu[n] = <psi_n | dH_mu | psi_level>
    std::vector<ComplexVector> w(np);
    for (int mu = 0; mu < np; ++mu)
        w[mu] = es.eigenvectors.adjoint() * (model.dh_at(x, mu) * es.eigenvectors.col(level));

    GeoTensor gt;
    gt.level = level;
    gt.x = x;
    gt.g = RealMatrix::Zero(np, np);
    gt.berry = RealMatrix::Zero(np, np);
    for (int mu = 0; mu < np; ++mu) {
        for (int nu = 0; nu < np; ++nu) {
            Complex q(0.0, 0.0);
            for (int n = 0; n < model.dim; ++n) {
                if (n == level) continue;
                const double de = es.eigenvalues[n] - es.eigenvalues[level];
                q += std::conj(w[mu][n]) * w[nu][n] / (de * de);
            }
            gt.g(mu, nu) = q.real();
            gt.berry(mu, nu) = q.imag();
        }
    }
    // symmetrize away roundoff
    gt.g = ((gt.g + gt.g.transpose()) / 2.0).eval();
    gt.berry = ((gt.berry - gt.berry.transpose()) / 2.0).eval();
    return gt;
}

GeoTensor qgt_tangent(const ParametricHamiltonian& model, const RealVector& x, int level,
                      double fd_step) {
    const int np = model.n_params();
    const ComplexVector psi = level_state(model, x, level, "qgt_tangent");
    const int d = model.dim;

    std::vector<ComplexMatrix> tangent(np);
    std::vector<ComplexVector> dpsi(np);
    for (int mu = 0; mu < np; ++mu) {
        const double h = fd_step * std::max(1.0, std::abs(x[mu]));
        RealVector xp = x, xm = x;
        xp[mu] += h;
        xm[mu] -= h;
        ComplexVector psip = level_state(model, xp, level, "qgt_tangent");
        ComplexVector psim = level_state(model, xm, level, "qgt_tangent");
        // parallel-transport gauge: the pivot-based gauge fix can flip
        // between neighboring points when two components tie in magnitude
        const Complex op = psi.dot(psip);
        const Complex om = psi.dot(psim);
        if (std::abs(op) > 0.0) psip *= std::conj(op) / std::abs(op);
        if (std::abs(om) > 0.0) psim *= std::conj(om) / std::abs(om);
        dpsi[mu] = (psip - psim) / (2.0 * h);
        tangent[mu] = dpsi[mu] * psi.adjoint() + psi * dpsi[mu].adjoint();
        (void)d;
    }

    GeoTensor gt;
    gt.level = level;
    gt.x = x;
    gt.g = RealMatrix::Zero(np, np);
    gt.berry = RealMatrix::Zero(np, np);
    for (int mu = 0; mu < np; ++mu) {
        for (int nu = 0; nu < np; ++nu) {
            gt.g(mu, nu) = 0.5 * (tangent[mu] * tangent[nu]).trace().real();
            const Complex q = dpsi[mu].dot(dpsi[nu]) - dpsi[mu].dot(psi) * psi.dot(dpsi[nu]);
            gt.berry(mu, nu) = q.imag();
        }
    }
    gt.g = ((gt.g + gt.g.transpose()) / 2.0).eval();
    gt.berry = ((gt.berry - gt.berry.transpose()) / 2.0).eval();
    return gt;
}

double qgt_fd_oracle(const ParametricHamiltonian& model, const RealVector& x,
                     const RealVector& dx, int level) {
    const double step = dx.norm();
    if (!(step > 0.0)) throw std::invalid_argument("qgt_fd_oracle: dx must be nonzero");
    const RealVector xp = x + dx / 2.0;
    const RealVector xm = x - dx / 2.0;
    const ComplexVector psip = level_state(model, xp, level, "qgt_fd_oracle");
    const ComplexVector psim = level_state(model, xm, level, "qgt_fd_oracle");
    const double overlap2 = std::norm(psim.dot(psip));
    // |<psi(x)|psi(x+dx)>|^2 = 1 - g_{mu nu} dx^mu dx^nu + O(dx^3)
    return (1.0 - overlap2) / (step * step);
}

GeoTensor pullback(const GeoTensor& gt, const RealMatrix& jacobian) {
    if (jacobian.rows() != gt.g.rows() || jacobian.rows() != jacobian.cols())
        throw ShapeMismatch("pullback: jacobian shape incompatible with tensor");
    if (!jacobian.allFinite()) throw std::invalid_argument("pullback: jacobian not finite");
    GeoTensor out = gt;
    out.g = jacobian.transpose() * gt.g * jacobian;
    out.berry = jacobian.transpose() * gt.berry * jacobian;
    return out;
}

SingularReport check_singular(const GeoTensor& gt) {
    SingularReport rep;
    rep.det = gt.g.determinant();
    const int n = static_cast<int>(gt.g.rows());
    const double scale = std::pow(std::max(gt.g.norm(), 1e-300), n);
    rep.singular = std::abs(rep.det) < 1e-12 * std::max(scale, 1e-300);
    return rep;
}

double metric_scalar(const ParametricHamiltonian& model, double eps, int level) {
    if (model.n_params() != 1)
        throw ShapeMismatch("metric_scalar: model must have exactly one active parameter");
    return qgt_spectral(model, scalar_point(eps), level).g(0, 0);
}

}  // namespace geoquad
