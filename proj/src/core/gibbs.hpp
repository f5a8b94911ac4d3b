#pragma once

#include "mpo.hpp"
#include "types.hpp"

namespace gibbsline {

// Selects the realization of the Gibbs-MPO contract
// ||M - e^{-beta H}||_1 <= eps ||e^{-beta H}||_1.
struct GibbsBackendSpec {
    enum class Kind { DenseCompress, Trotter };
    Kind kind = Kind::DenseCompress;
    double svd_tol = 1e-4;   // starting (dense) / per-cut (trotter) truncation
    long max_bond = -1;      // < 0: unlimited
    int trotter_steps = 32;  // trotter only

    void validate() const;
};

struct GibbsMpoResult {
    Mpo mpo;
    // "trace-norm relative (upper bound)" for dense-compress,
    // "frobenius relative (surrogate)" for trotter, "exact" for beta = 0.
    std::string error_notion;
    double measured_error = 0.0;  // NaN when no dense reference was feasible
    bool heuristic = false;       // true iff the 1-norm contract is uncertified
    double svd_tol_used = 0.0;
    int max_bond = 1;
    double wall_seconds = 0.0;
};

// MPO approximation of the unnormalized Gibbs operator e^{-beta H_[1,n]}.
// The dense-compress backend certifies the relative trace-norm contract by
// direct measurement (tightening svd_tol until <= eps or lossless). The
// Trotter backend is a second-order even/odd splitting with per-step SVD
// truncation; it cannot certify the 1-norm contract and says so explicitly.
GibbsMpoResult mpo_gibbs(const InteractionTerm& h, int n_sites, double beta,
                         double eps, const GibbsBackendSpec& backend);

}  // namespace gibbsline
