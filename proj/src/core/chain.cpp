#include "chain.hpp"

#include <cmath>

#include "spectral.hpp"

namespace gibbsline {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

DenseOperator embed_term(const InteractionTerm& h, int i, int n_sites) {
    if (i < 1 || i > n_sites - 1)
        throw std::invalid_argument("embed_term: bond index " + std::to_string(i) +
                                    " out of range for N = " + std::to_string(n_sites));
    const long long dim = checked_dim(h.d, n_sites);
    const long long left = checked_dim(h.d, i - 1);
    const long long right = dim / (left * h.d * h.d);
    Matrix m = kron(Matrix::Identity(left, left), h.matrix);
    m = kron(m, Matrix::Identity(right, right));
    return DenseOperator{n_sites, h.d, std::move(m)};
}

DenseOperator build_hamiltonian(const InteractionTerm& h, int n_sites) {
    if (n_sites < 1) throw std::invalid_argument("build_hamiltonian: N must be >= 1");
    const long long dim = checked_dim(h.d, n_sites);
    DenseOperator out{n_sites, h.d, Matrix::Zero(dim, dim)};
    // Accumulate I (x) h (x) I in place: each term touches only d^(N+2)
    // entries, so no d^N x d^N kron temporaries are ever materialized.
    const int d2 = h.d * h.d;
    for (int i = 1; i < n_sites; ++i) {
        long long left = 1;
        for (int k = 1; k < i; ++k) left *= h.d;
        const long long right = dim / (left * d2);
        for (long long a = 0; a < left; ++a) {
            const long long base = a * d2 * right;
            for (int p = 0; p < d2; ++p)
                for (int q = 0; q < d2; ++q) {
                    const Complex v = h.matrix(p, q);
                    if (v == Complex(0.0, 0.0)) continue;
                    for (long long c = 0; c < right; ++c)
                        out.matrix(base + p * right + c, base + q * right + c) += v;
                }
        }
    }
    return out;
}

DenseOperator hermitian_expm(const DenseOperator& a, double c) {
    Spectrum s = eigh(a.matrix, /*want_vectors=*/true);
    Eigen::VectorXd ew = (c * s.eigenvalues.array()).exp();
    Matrix m = s.eigenvectors * ew.asDiagonal() * s.eigenvectors.adjoint();
    return DenseOperator{a.n_sites, a.d, std::move(m)};
}

namespace {
double log_sum_exp(const RealVector& x) {
    const double m = x.maxCoeff();
    return m + std::log((x.array() - m).exp().sum());
}
}  // namespace

double log_partition_function(const InteractionTerm& h, int n_sites, double beta) {
    if (beta <= 0) throw std::invalid_argument("log_partition_function: beta must be > 0");
    DenseOperator ham = build_hamiltonian(h, n_sites);
    Spectrum s = eigh(ham.matrix, /*want_vectors=*/false);
    return log_sum_exp((-beta * s.eigenvalues.array()).matrix());
}

double exact_ratio(const InteractionTerm& h, int l, double beta) {
    if (l < 1) throw std::invalid_argument("exact_ratio: l must be >= 1");
    return std::exp(log_partition_function(h, l + 1, beta) -
                    log_partition_function(h, l, beta));
}

}  // namespace gibbsline
