#pragma once

#include "types.hpp"

namespace gibbsline {

// Gamma_H^t(A) = e^{itH} A e^{-itH} via eigendecomposition of H.
Matrix heisenberg_evolve(const Matrix& h, const Matrix& a, double t);

// || Gamma_{H(s)}^t(A) - Gamma_{H_l(s)}^t(A) || for A = h_{L,L+1} on the chain
// [1, L+1], with H(s) = H_[1,L] + s h_{L,L+1} and the truncated H_l(s).
double truncation_error(const InteractionTerm& h, int L, int l, double s, double t);

// Explicit truncation bound 2 ||A|| e^{C|t| - D l}, C = 56 beta, valid for
// l >= E |t| e^{2D} with E = 48 beta.
struct LrBoundParams {
    double beta = 1.0;
    double decay = 1.0;  // D > 0, free choice
    double c = 56.0;     // 56 beta
    double e = 48.0;     // 48 beta

    static LrBoundParams from_beta(double beta, double decay);
};

struct LrBound {
    double bound = 0.0;
    bool valid = false;  // callers must ignore bound when false
};

LrBound lr_bound(double a_norm, const LrBoundParams& params, double t, int l);

// Upper bound on Omega*_k(x): the series sum_{n >= ceil(k/2)} (6 x beta)^n / n!,
// summed with an exponential-tail remainder certificate below 1e-14 relative.
double omega_star_bound(double beta, double x, int k, int n_terms);

}  // namespace gibbsline
