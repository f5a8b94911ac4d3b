#include "spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <vector>

namespace gibbsline {
namespace {

bool is_real(const Matrix& a) {
    return a.imag().cwiseAbs().maxCoeff() == 0.0;
}

Spectrum eigh_real(const Eigen::MatrixXd& a, bool want_vectors) {
    const int n = static_cast<int>(a.rows());
    Spectrum s;
    s.eigenvalues.resize(n);
    Eigen::MatrixXd work = a;
    int info;
    if (want_vectors && n >= 128) {
        info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, work.data(), n,
                              s.eigenvalues.data());
        if (info == 0) {
            s.eigenvectors = work.cast<Complex>();
            return s;
        }
    } else if (!want_vectors && n >= 512) {
        info = LAPACKE_dsyev_2stage(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n,
                                    s.eigenvalues.data());
        if (info == 0) return s;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        a, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("eigensolver failed to converge");
    s.eigenvalues = es.eigenvalues();
    if (want_vectors) s.eigenvectors = es.eigenvectors().cast<Complex>();
    return s;
}

Spectrum eigh_complex(const Matrix& a, bool want_vectors) {
    const int n = static_cast<int>(a.rows());
    Spectrum s;
    s.eigenvalues.resize(n);
    Matrix work = a;
    auto* ptr = reinterpret_cast<lapack_complex_double*>(work.data());
    int info;
    if (want_vectors && n >= 128) {
        info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, ptr, n, s.eigenvalues.data());
        if (info == 0) {
            s.eigenvectors = std::move(work);
            return s;
        }
    } else if (!want_vectors && n >= 512) {
        info = LAPACKE_zheev_2stage(LAPACK_COL_MAJOR, 'N', 'L', n, ptr, n,
                                    s.eigenvalues.data());
        if (info == 0) return s;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        a, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("eigensolver failed to converge");
    s.eigenvalues = es.eigenvalues();
    if (want_vectors) s.eigenvectors = es.eigenvectors();
    return s;
}

// Exactly-diagonal inputs (classical models) skip the dense solver entirely.
bool is_diagonal(const Matrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j && a(i, j) != Complex(0.0, 0.0)) return false;
    return true;
}

Spectrum eigh_diagonal(const Matrix& a, bool want_vectors) {
    const Eigen::Index n = a.rows();
    std::vector<Eigen::Index> order(n);
    for (Eigen::Index k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return a(x, x).real() < a(y, y).real();
    });
    Spectrum s;
    s.eigenvalues.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) s.eigenvalues(k) = a(order[k], order[k]).real();
    if (want_vectors) {
        s.eigenvectors = Matrix::Zero(n, n);
        for (Eigen::Index k = 0; k < n; ++k) s.eigenvectors(order[k], k) = 1.0;
    }
    return s;
}

}  // namespace

Spectrum eigh(const Matrix& a, bool want_vectors, double hermiticity_tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigh: matrix not square");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (defect > hermiticity_tol * scale)
        throw std::invalid_argument("eigh: matrix not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    if (is_diagonal(a)) return eigh_diagonal(a, want_vectors);
    if (is_real(a)) return eigh_real(a.real(), want_vectors);
    return eigh_complex(Matrix((a + a.adjoint()) / 2.0), want_vectors);
}

double operator_norm(const Matrix& a) {
    if (a.rows() == a.cols() &&
        (a - a.adjoint()).cwiseAbs().maxCoeff() <=
            1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
        Spectrum s = eigh(a, /*want_vectors=*/false);
        return std::max(std::abs(s.eigenvalues.minCoeff()),
                        std::abs(s.eigenvalues.maxCoeff()));
    }
    // General case: singular values via A^dagger A.
    Spectrum s = eigh(Matrix(a.adjoint() * a), /*want_vectors=*/false);
    return std::sqrt(std::max(0.0, s.eigenvalues.maxCoeff()));
}

double trace_norm_upper(const Matrix& a) {
    Matrix herm = (a + a.adjoint()) / 2.0;
    Matrix anti = (a - a.adjoint()) / (2.0 * Complex(0, 1));
    double total = eigh(herm, false).eigenvalues.cwiseAbs().sum();
    if (anti.cwiseAbs().maxCoeff() > 0.0)
        total += eigh(anti, false).eigenvalues.cwiseAbs().sum();
    return total;
}

}  // namespace gibbsline
