#pragma once

#include "types.hpp"

namespace gibbsline {

// Kronecker product, first factor's indices major.
Matrix kron(const Matrix& a, const Matrix& b);

// I^(i-1) (x) h (x) I^(N-i-1) on a chain of N sites, 1 <= i <= N-1.
DenseOperator embed_term(const InteractionTerm& h, int i, int n_sites);

// H_[1,N] = sum_{i=1}^{N-1} h_{i,i+1}. N = 1 gives the zero operator on C^d.
DenseOperator build_hamiltonian(const InteractionTerm& h, int n_sites);

// e^{c A} for Hermitian A via eigendecomposition.
DenseOperator hermitian_expm(const DenseOperator& a, double c);

// log Z_N = log Tr e^{-beta H_[1,N]}, evaluated in the log domain
// (log-sum-exp over eigenvalues) so beta*N large cannot overflow.
double log_partition_function(const InteractionTerm& h, int n_sites, double beta);

// Z_{l+1} / Z_l by exact diagonalization.
double exact_ratio(const InteractionTerm& h, int l, double beta);

}  // namespace gibbsline
