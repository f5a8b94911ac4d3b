#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "types.hpp"

namespace gibbsline {

// Matrix product operator on n sites with open boundary (D_0 = D_n = 1).
// Site tensors are stored as d^2 bond matrices per site: site(i)[r*d + s] is
// the D_{i-1} x D_i matrix M^i_{r,s}.
struct Mpo {
    int d = 0;
    std::vector<std::vector<Matrix>> sites;

    int n_sites() const { return static_cast<int>(sites.size()); }
    // D_i for i = 0..n_sites (boundary dims included).
    std::vector<int> bond_dims() const;
    int max_bond() const;
    void check_consistent() const;  // throws on bond mismatch
};

// Identity operator as a bond-dimension-1 MPO.
Mpo mpo_identity(int n_sites, int d);

// Tr rho[M] by sequential contraction of the per-site partial traces,
// O(n D^2 d) arithmetic. op_count, when given, receives the number of scalar
// operations actually performed.
Complex mpo_trace(const Mpo& m, std::uint64_t* op_count = nullptr);

// Log-domain trace: each site tensor is scaled by 1/d during the contraction
// and the prefactor n log d is restored, so Tr ~ d^n e^{O(beta n)} cannot
// overflow. Returns log Tr; throws NumericError if the trace is not positive.
double mpo_log_trace(const Mpo& m);

// Sequential left-to-right SVD factorization of a dense operator. Singular
// values below svd_tol * sigma_max at each cut are discarded; max_bond < 0
// means unlimited.
Mpo dense_to_mpo(const DenseOperator& a, double svd_tol, long max_bond = -1);

// Exact expansion of the tensor train.
DenseOperator mpo_to_dense(const Mpo& m);

// Left-multiplies the MPO by a two-site gate on sites (i, i+1), 1-based, then
// re-splits the pair by SVD with the given truncation.
void apply_two_site_gate(Mpo& m, const Matrix& gate, int i, double svd_tol,
                         long max_bond);

// Self-describing JSON form (shape header + flattened [re, im] pairs).
std::string mpo_to_json(const Mpo& m);
Mpo mpo_from_json(const std::string& text);

}  // namespace gibbsline
