#include "geoquad/linalg.hpp"

#include <cmath>
#include <limits>

namespace geoquad {

double EigenSystem::gap_to(int level) const {
    double gap = std::numeric_limits<double>::infinity();
    for (int m = 0; m < eigenvalues.size(); ++m) {
        if (m == level) continue;
        gap = std::min(gap, std::abs(eigenvalues[m] - eigenvalues[level]));
    }
    return gap;
}

bool is_hermitian(const ComplexMatrix& H, double rel_tol) {
    if (H.rows() != H.cols()) return false;
    const double scale = std::max(H.norm(), 1e-300);
    return (H - H.adjoint()).norm() <= rel_tol * std::max(scale, 1.0);
}

static void gauge_fix_column(Eigen::Ref<ComplexVector> v) {
    int imax = 0;
    double amax = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > amax + 1e-15) {  // strict win, ties keep the earliest index
            amax = a;
            imax = i;
        }
    }
    if (amax <= 0.0) return;
    const Complex phase = v[imax] / amax;
    v *= std::conj(phase);
    v[imax] = Complex(std::abs(v[imax]), 0.0);  // kill residual imaginary dust
}

EigenSystem eigensystem(const ComplexMatrix& H) {
    if (H.rows() != H.cols()) throw ShapeMismatch("eigensystem: matrix not square");
    if (!is_hermitian(H)) throw NotHermitian("eigensystem: input not Hermitian within 1e-10");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver;
    solver.compute((H + H.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("eigensystem: eigensolver did not converge");
    EigenSystem es;
    es.eigenvalues = solver.eigenvalues();
    es.eigenvectors = solver.eigenvectors();
    for (int k = 0; k < es.eigenvectors.cols(); ++k) gauge_fix_column(es.eigenvectors.col(k));
    return es;
}

ComplexMatrix expm_unitary(const ComplexMatrix& H, double dt) {
    if (!std::isfinite(dt)) throw std::invalid_argument("expm_unitary: dt not finite");
    const EigenSystem es = eigensystem(H);
    const int n = static_cast<int>(H.rows());
    ComplexVector phases(n);
    for (int k = 0; k < n; ++k) phases[k] = std::exp(Complex(0.0, -es.eigenvalues[k] * dt));
    return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

ComplexMatrix expm_general(const ComplexMatrix& A) {
    if (A.rows() != A.cols()) throw ShapeMismatch("expm_general: matrix not square");
    const int n = static_cast<int>(A.rows());
    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();  // infinity norm
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const ComplexMatrix B = A / std::pow(2.0, squarings);

    ComplexMatrix result = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = (term * B) / static_cast<double>(k);
        result += term;
        if (term.norm() <= 1e-16 * result.norm()) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
    ComplexMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

ComplexVector vec_row(const ComplexMatrix& rho) {
    ComplexVector v(rho.rows() * rho.cols());
    int k = 0;
    for (int i = 0; i < rho.rows(); ++i)
        for (int j = 0; j < rho.cols(); ++j) v[k++] = rho(i, j);
    return v;
}

ComplexMatrix unvec_row(const ComplexVector& v) {
    const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (static_cast<long long>(n) * n != v.size())
        throw ShapeMismatch("unvec_row: length is not a perfect square");
    ComplexMatrix rho(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rho(i, j) = v[k++];
    return rho;
}

}  // namespace geoquad
