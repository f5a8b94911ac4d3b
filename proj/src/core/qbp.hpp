#pragma once

#include <optional>

#include "types.hpp"

namespace gibbsline {

// Filter kernel in frequency: tanh(beta w/2)/(beta w/2), 1 at w = 0.
double kernel_freq(double beta, double omega);

// Filter kernel in time: (2/(beta pi)) log((e^{pi|t|/beta}+1)/(e^{pi|t|/beta}-1)).
// Logarithmically divergent at t = 0; t = 0 is rejected (the singularity is
// integrable and handled by the callers' open quadrature panels).
double kernel_time(double beta, double t);

// Closed-form tail bound: integral of the time kernel over [a, infinity).
double kernel_tail_bound(double beta, double a);

// Filtered perturbation, evaluated exactly in the eigenbasis of H:
// Phi_{jk} = kernel_freq(E_j - E_k) V_{jk}.
Matrix phi_spectral(const Matrix& h, const Matrix& v, double beta);

// The same operator as the time integral of f_beta(t) Gamma^t_H(V), by
// midpoint quadrature in log t over |t| in (0, a]; the substitution absorbs
// the integrable singularity at t = 0. Converges to phi_spectral as a and
// n_points grow.
Matrix phi_quadrature(const Matrix& h, const Matrix& v, double beta, double a,
                      int n_points);

// Perturbed-chain setup: H(s) = H_[1,L] + s h_{L,L+1} on L+1 sites;
// truncation radius l replaces H_[1,L] by H_[L-l,L].
struct PerturbationSetup {
    InteractionTerm h;
    int L = 2;
    std::optional<int> l;  // empty: untruncated
    double beta = 1.0;

    void validate() const;
};

struct QbpOperators {
    Matrix eta;  // on the full chain [1, L+1]; non-Hermitian in general
    int step_count = 0;
};

// Time-ordered exponential eta(1) of -(beta/2) Phi^{H(s)}(V), integrated with
// classical fourth-order stepping over s in [0,1]; Phi evaluated spectrally
// with H(s) re-diagonalized per stage.
QbpOperators qbp_eta(const PerturbationSetup& setup, int n_steps);

// Same integration with the truncated Hamiltonian H_l(s); the result acts as
// the identity outside [L-l, L+1].
QbpOperators qbp_eta_truncated(const PerturbationSetup& setup, int n_steps);

struct RatioIdentityResult {
    double lhs = 0.0;  // Z_{L+1}/Z_L by exact diagonalization
    double rhs = 0.0;  // d Tr[eta e^{-beta H(0)} eta^dagger] / Tr[e^{-beta H(0)}]
    double abs_diff = 0.0;
};

// The exact partition-function ratio identity, as a correctness oracle for
// the QBP operators.
RatioIdentityResult verify_ratio_identity(const PerturbationSetup& setup, int n_steps);

}  // namespace gibbsline
