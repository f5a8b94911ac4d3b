#include "lieb_robinson.hpp"

#include <cmath>

#include "chain.hpp"
#include "spectral.hpp"

namespace gibbsline {

Matrix heisenberg_evolve(const Matrix& h, const Matrix& a, double t) {
    if (h.rows() != a.rows() || h.cols() != a.cols())
        throw std::invalid_argument("heisenberg_evolve: dimension mismatch");
    if (t == 0.0) return a;
    Spectrum s = eigh(h, /*want_vectors=*/true);
    Eigen::VectorXcd phases =
        (Complex(0, t) * s.eigenvalues.array().cast<Complex>()).exp();
    Matrix at = s.eigenvectors.adjoint() * a * s.eigenvectors;
    for (Eigen::Index j = 0; j < at.rows(); ++j)
        for (Eigen::Index k = 0; k < at.cols(); ++k)
            at(j, k) *= phases(j) * std::conj(phases(k));
    return s.eigenvectors * at * s.eigenvectors.adjoint();
}

double truncation_error(const InteractionTerm& h, int L, int l, double s, double t) {
    if (L < 2) throw std::invalid_argument("truncation_error: L must be >= 2");
    if (l < 1 || l > L - 1)
        throw std::invalid_argument("truncation_error: l must be in [1, L-1]");
    const int n_total = L + 1;
    const int d = h.d;
    checked_dim(d, n_total);
    const Matrix v = embed_term(h, L, n_total).matrix;
    const Matrix h_full =
        kron(build_hamiltonian(h, L).matrix, Matrix::Identity(d, d)) + s * v;
    // Truncated evolution acts on the window [L-l, L+1] only.
    const int w = l + 2;
    Matrix h_win = Matrix::Zero(checked_dim(d, w), checked_dim(d, w));
    for (int i = 1; i <= w - 2; ++i) h_win += embed_term(h, i, w).matrix;
    const Matrix v_win = embed_term(h, w - 1, w).matrix;
    h_win += s * v_win;
    const Matrix evolved_win = heisenberg_evolve(h_win, v_win, t);
    const long long left = checked_dim(d, L - l - 1);
    const Matrix evolved_trunc = kron(Matrix::Identity(left, left), evolved_win);
    return operator_norm(heisenberg_evolve(h_full, v, t) - evolved_trunc);
}

LrBoundParams LrBoundParams::from_beta(double beta, double decay) {
    if (beta <= 0 || decay <= 0)
        throw std::invalid_argument("lr bound: beta and D must be > 0");
    return LrBoundParams{beta, decay, 56.0 * beta, 48.0 * beta};
}

LrBound lr_bound(double a_norm, const LrBoundParams& params, double t, int l) {
    LrBound out;
    out.bound = 2.0 * a_norm * std::exp(params.c * std::abs(t) - params.decay * l);
    out.valid = l >= params.e * std::abs(t) * std::exp(2.0 * params.decay);
    return out;
}

double omega_star_bound(double beta, double x, int k, int n_terms) {
    if (x < 0) throw std::invalid_argument("omega_star_bound: x must be >= 0");
    if (k < 0 || n_terms < 1)
        throw std::invalid_argument("omega_star_bound: invalid k or n_terms");
    const double y = 6.0 * x * beta;
    const int start = (k + 1) / 2;
    double term = 1.0;
    for (int n = 1; n <= start; ++n) term *= y / n;  // y^start / start!
    double sum = 0.0;
    for (int n = start; n < start + n_terms; ++n) {
        sum += term;
        term *= y / (n + 1);
    }
    // Remainder <= e^y y^N / N! at N = start + n_terms (tail bound for the
    // exponential series); `term` already equals y^N / N!.
    const double remainder = std::exp(y) * term;
    if (remainder > 1e-14 * std::max(sum, 1e-300))
        throw std::invalid_argument("omega_star_bound: n_terms too small for the "
                                    "requested tail certificate");
    return sum;
}

}  // namespace gibbsline
