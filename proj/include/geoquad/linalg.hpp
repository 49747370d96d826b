#pragma once

#include <Eigen/Dense>
#include <complex>

#include "geoquad/errors.hpp"

namespace geoquad {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Hermitian eigendecomposition with a fixed gauge so repeated calls (and
/// finite differences across nearby inputs) give reproducible eigenvectors.
struct EigenSystem {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // orthonormal columns, gauge-fixed

    /// Smallest |E_m - E_level| over m != level.
    double gap_to(int level) const;
};

bool is_hermitian(const ComplexMatrix& H, double rel_tol = 1e-10);

/// Throws NotHermitian / ConvergenceFailure. Gauge: the largest-magnitude
/// component of each eigenvector is made real and positive.
EigenSystem eigensystem(const ComplexMatrix& H);

/// exp(-i H dt) for Hermitian H, via eigendecomposition. Unitary by
/// construction up to roundoff.
ComplexMatrix expm_unitary(const ComplexMatrix& H, double dt);

/// Dense matrix exponential for general (non-Hermitian) matrices:
/// scaling-and-squaring with a Taylor core. Used for Lindblad superoperators.
ComplexMatrix expm_general(const ComplexMatrix& A);

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);

/// Row vectorization: vec_row([[a,b],[c,d]]) = (a,b,c,d).
ComplexVector vec_row(const ComplexMatrix& rho);
ComplexMatrix unvec_row(const ComplexVector& v);

}  // namespace geoquad
