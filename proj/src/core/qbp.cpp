#include "qbp.hpp"

#include <cmath>
#include <numbers>

#include "chain.hpp"
#include "spectral.hpp"

namespace gibbsline {

namespace {
constexpr double kPi = std::numbers::pi;
}

double kernel_freq(double beta, double omega) {
    if (beta <= 0) throw std::invalid_argument("kernel_freq: beta must be > 0");
    const double x = beta * omega / 2;
    if (x == 0.0) return 1.0;
    return std::tanh(x) / x;
}

double kernel_time(double beta, double t) {
    if (beta <= 0) throw std::invalid_argument("kernel_time: beta must be > 0");
    if (t == 0.0) throw std::invalid_argument("kernel_time: t = 0 is singular");
    const double x = kPi * std::abs(t) / beta;
    if (x < 0.5) {
        // (e^x+1)/(e^x-1) = (2 + expm1(x))/expm1(x); expm1 keeps the
        // denominator accurate down to denormal t.
        const double den = std::expm1(x);
        return (2.0 / (beta * kPi)) * std::log((2.0 + den) / den);
    }
    // log((e^x+1)/(e^x-1)) = log1p(e^-x) - log1p(-e^-x), stable for large x.
    const double e = std::exp(-x);
    return (2.0 / (beta * kPi)) * (std::log1p(e) - std::log1p(-e));
}

double kernel_tail_bound(double beta, double a) {
    return 4.0 / (kPi * kPi * std::expm1(kPi * a / beta));
}

Matrix phi_spectral(const Matrix& h, const Matrix& v, double beta) {
    if (h.rows() != v.rows() || h.cols() != v.cols())
        throw std::invalid_argument("phi_spectral: dimension mismatch");
    Spectrum s = eigh(h, /*want_vectors=*/true);
    Matrix vt = s.eigenvectors.adjoint() * v * s.eigenvectors;
    for (Eigen::Index j = 0; j < vt.rows(); ++j)
        for (Eigen::Index k = 0; k < vt.cols(); ++k)
            vt(j, k) *= kernel_freq(beta, s.eigenvalues(j) - s.eigenvalues(k));
    return s.eigenvectors * vt * s.eigenvectors.adjoint();
}

Matrix phi_quadrature(const Matrix& h, const Matrix& v, double beta, double a,
                      int n_points) {
    if (a <= 0 || n_points < 2)
        throw std::invalid_argument("phi_quadrature: need a > 0 and n_points >= 2");
    if (h.rows() != v.rows() || h.cols() != v.cols())
        throw std::invalid_argument("phi_quadrature: dimension mismatch");
    Spectrum s = eigh(h, /*want_vectors=*/true);
    Matrix vt = s.eigenvectors.adjoint() * v * s.eigenvectors;
    const Eigen::Index n = vt.rows();

    // In the eigenbasis Gamma^t(V) + Gamma^{-t}(V) = 2 cos(w_jk t) V_jk, so the
    // whole symmetric quadrature is an entrywise cosine transform.
    Matrix weight = Matrix::Zero(n, n);
    auto accumulate = [&](double t, double panel) {
        const double w = panel * kernel_time(beta, t);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                weight(j, k) += 2.0 * w * std::cos((s.eigenvalues(j) - s.eigenvalues(k)) * t);
    };
    // Midpoint rule in u = log t: the substitution absorbs the logarithmic
    // singularity at t = 0 (integrand f(e^u) e^u stays smooth), leaving the
    // missing mass below t = a e^-32 ~ 1e-14 a negligible.
    const double u_hi = std::log(a);
    const double u_lo = u_hi - 32.0;
    const double du = (u_hi - u_lo) / n_points;
    for (int k = 0; k < n_points; ++k) {
        const double t = std::exp(u_lo + (k + 0.5) * du);
        accumulate(t, t * du);
    }
    return s.eigenvectors * vt.cwiseProduct(weight) * s.eigenvectors.adjoint();
}

void PerturbationSetup::validate() const {
    if (L < 2) throw std::invalid_argument("perturbation setup: L must be >= 2");
    if (beta <= 0) throw std::invalid_argument("perturbation setup: beta must be > 0");
    if (l && (*l < 1 || *l > L - 1))
        throw std::invalid_argument("perturbation setup: truncation radius must be in [1, L-1]");
    checked_dim(h.d, L + 1);
}

namespace {

// RK4 for eta' = -(beta/2) Phi^{H0 + sV}(V) eta on [0,1].
Matrix integrate_eta(const Matrix& h0, const Matrix& v, double beta, int n_steps) {
    const Eigen::Index dim = h0.rows();
    Matrix eta = Matrix::Identity(dim, dim);
    if (v.cwiseAbs().maxCoeff() == 0.0) return eta;
    const double hstep = 1.0 / n_steps;
    auto coeff = [&](double s) {
        return Matrix(-(beta / 2) * phi_spectral(h0 + s * v, v, beta));
    };
    Matrix f_lo = coeff(0.0);
    for (int k = 0; k < n_steps; ++k) {
        const double s = k * hstep;
        const Matrix f_mid = coeff(s + hstep / 2);
        const Matrix f_hi = coeff(s + hstep);
        const Matrix k1 = f_lo * eta;
        const Matrix k2 = f_mid * (eta + (hstep / 2) * k1);
        const Matrix k3 = f_mid * (eta + (hstep / 2) * k2);
        const Matrix k4 = f_hi * (eta + hstep * k3);
        eta += (hstep / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        f_lo = f_hi;
    }
    return eta;
}

}  // namespace

QbpOperators qbp_eta(const PerturbationSetup& setup, int n_steps) {
    setup.validate();
    if (n_steps < 1) throw std::invalid_argument("qbp_eta: n_steps must be >= 1");
    const int n_total = setup.L + 1;
    const int d = setup.h.d;
    Matrix h0 = kron(build_hamiltonian(setup.h, setup.L).matrix, Matrix::Identity(d, d));
    Matrix v = embed_term(setup.h, setup.L, n_total).matrix;
    return QbpOperators{integrate_eta(h0, v, setup.beta, n_steps), n_steps};
}

QbpOperators qbp_eta_truncated(const PerturbationSetup& setup, int n_steps) {
    setup.validate();
    if (!setup.l) throw std::invalid_argument("qbp_eta_truncated: no truncation radius set");
    if (n_steps < 1) throw std::invalid_argument("qbp_eta_truncated: n_steps must be >= 1");
    const int radius = *setup.l;
    const int d = setup.h.d;
    // Window [L-l, L+1] of l+2 sites; H_l(s) = H_[L-l,L] + s h_{L,L+1} lives here.
    const int w = radius + 2;
    Matrix h0_win = Matrix::Zero(checked_dim(d, w), checked_dim(d, w));
    for (int i = 1; i <= w - 2; ++i) h0_win += embed_term(setup.h, i, w).matrix;
    Matrix v_win = embed_term(setup.h, w - 1, w).matrix;
    Matrix eta_win = integrate_eta(h0_win, v_win, setup.beta, n_steps);
    const long long left = checked_dim(d, setup.L - radius - 1);
    return QbpOperators{kron(Matrix::Identity(left, left), eta_win), n_steps};
}

RatioIdentityResult verify_ratio_identity(const PerturbationSetup& setup, int n_steps) {
    setup.validate();
    RatioIdentityResult out;
    out.lhs = exact_ratio(setup.h, setup.L, setup.beta);
    const int d = setup.h.d;
    Matrix h0 = kron(build_hamiltonian(setup.h, setup.L).matrix, Matrix::Identity(d, d));
    Spectrum s = eigh(h0, /*want_vectors=*/true);
    Eigen::VectorXd weights = (-setup.beta * s.eigenvalues.array()).exp();
    Matrix rho = s.eigenvectors * weights.asDiagonal() * s.eigenvectors.adjoint();
    const double z0 = weights.sum();
    const Matrix eta = qbp_eta(setup, n_steps).eta;
    out.rhs = d * (eta * rho * eta.adjoint()).trace().real() / z0;
    out.abs_diff = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace gibbsline
