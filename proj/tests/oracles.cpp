#include "oracles.hpp"

#include <cmath>
#include <random>

namespace oracle {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

Matrix embed(const Matrix& h, int d, int i, int n_sites) {
    Matrix out = Matrix::Identity(1, 1);
    int site = 1;
    while (site <= n_sites) {
        if (site == i) {
            out = kron(out, h);
            site += 2;
        } else {
            out = kron(out, Matrix::Identity(d, d));
            site += 1;
        }
    }
    return out;
}

Matrix chain_hamiltonian(const Matrix& h, int d, int n_sites) {
    long long dim = 1;
    for (int k = 0; k < n_sites; ++k) dim *= d;
    Matrix out = Matrix::Zero(dim, dim);
    for (int i = 1; i <= n_sites - 1; ++i) out += embed(h, d, i, n_sites);
    return out;
}

Matrix expm_taylor(const Matrix& a, double c, int order) {
    Matrix x = c * a;
    int squarings = 0;
    while (x.norm() > 0.5) {
        x *= 0.5;
        ++squarings;
    }
    Matrix out = Matrix::Identity(x.rows(), x.cols());
    Matrix term = out;
    for (int k = 1; k <= order; ++k) {
        term = (term * x) / static_cast<double>(k);
        out += term;
    }
    for (int s = 0; s < squarings; ++s) out = out * out;
    return out;
}

Matrix commutator_series(const Matrix& h, const Matrix& a, double t, int order) {
    Matrix out = a;
    Matrix nested = a;
    Complex factor(1.0, 0.0);
    for (int k = 1; k <= order; ++k) {
        nested = h * nested - nested * h;
        factor *= Complex(0.0, t) / static_cast<double>(k);
        out += factor * nested;
    }
    return out;
}

double log_trace_expm(const Matrix& h, double beta) {
    // Shift by the largest diagonal magnitude so the series stays tame; the
    // shift is restored exactly.
    const double shift = h.diagonal().real().minCoeff();
    const Matrix shifted = h - shift * Matrix::Identity(h.rows(), h.cols());
    return std::log(expm_taylor(shifted, -beta).trace().real()) - beta * shift;
}

double tfim_log_z(int n_sites, double j, double g, double beta) {
    Eigen::VectorXd field = Eigen::VectorXd::Constant(n_sites, g);
    field(0) = field(n_sites - 1) = g / 2.0;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_sites, n_sites);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n_sites, n_sites);
    for (int i = 0; i < n_sites; ++i) a(i, i) = 2.0 * field(i);
    for (int i = 0; i + 1 < n_sites; ++i) {
        a(i, i + 1) = a(i + 1, i) = -j;
        b(i, i + 1) = -j;
        b(i + 1, i) = j;
    }
    // (A-B)(A+B) = (A-B)(A-B)^T is symmetric PSD; its root spectrum is the
    // single-particle dispersion.
    const Eigen::MatrixXd m = (a - b) * (a + b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const double e0 = 0.5 * (a.trace() - lambda.sum()) - field.sum();
    double log_z = -beta * e0;
    for (int k = 0; k < n_sites; ++k) log_z += std::log1p(std::exp(-beta * lambda(k)));
    return log_z;
}

Matrix random_hermitian(int dim, std::uint32_t seed, double norm_target) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(dist(rng), dist(rng));
    Matrix h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    if (norm > 0) h *= norm_target / norm;
    return h;
}

Matrix random_unitary(int dim, std::uint32_t seed) {
    const Matrix h = random_hermitian(dim, seed, 1.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Matrix phases = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k)
        phases(k, k) = std::exp(Complex(0.0, es.eigenvalues()(k)));
    return es.eigenvectors() * phases * es.eigenvectors().adjoint();
}

Matrix phi_reference(const Matrix& h, const Matrix& v, double beta) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Matrix vt = es.eigenvectors().adjoint() * v * es.eigenvectors();
    Matrix out(vt.rows(), vt.cols());
    for (int jj = 0; jj < vt.rows(); ++jj) {
        for (int kk = 0; kk < vt.cols(); ++kk) {
            const double w = es.eigenvalues()(jj) - es.eigenvalues()(kk);
            const double x = beta * w / 2.0;
            const double f = x == 0.0 ? 1.0 : std::tanh(x) / x;
            out(jj, kk) = f * vt(jj, kk);
        }
    }
    return es.eigenvectors() * out * es.eigenvectors().adjoint();
}

Matrix eta_reference(const Matrix& h0, const Matrix& v, double beta, int n_steps) {
    const int dim = static_cast<int>(h0.rows());
    Matrix eta = Matrix::Identity(dim, dim);
    const double ds = 1.0 / n_steps;
    for (int k = 0; k < n_steps; ++k) {
        const double s_mid = (k + 0.5) * ds;
        const Matrix gen = -(beta / 2.0) * phi_reference(h0 + s_mid * v, v, beta);
        // explicit midpoint step
        const Matrix k1 = gen * eta;
        const Matrix k2 = gen * (eta + 0.5 * ds * k1);
        eta += ds * k2;
    }
    return eta;
}

}  // namespace oracle
