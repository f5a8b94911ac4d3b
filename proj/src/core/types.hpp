#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <stdexcept>
#include <string>
#include <vector>

namespace gibbsline {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Numeric failure during an otherwise valid computation (exit code 3 at the CLI).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// d^N exceeded the configured dense-dimension cap.
struct DimensionCapError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Global cap on dense Hilbert-space dimension d^N. Default 2^16.
long long dim_cap();
void set_dim_cap(long long cap);

// Returns d^n after checking it against the cap.
long long checked_dim(int d, int n_sites);

// Nearest-neighbour interaction h on C^d (x) C^d with ||h|| <= 1.
// Index convention (normative for the whole project): the d^2 x d^2 matrix is
// indexed row-major over pairs, site-1 major, i.e. row (r1*d + r2), column
// (s1*d + s2) holds <r1 r2| h |s1 s2>.
struct InteractionTerm {
    int d = 0;
    Matrix matrix;

    // Validates invariants: Hermiticity (entrywise 1e-12, symmetrized with a
    // warning when the defect is below 1e-9), spectral norm <= 1 + 1e-9, d >= 2.
    static InteractionTerm validated(int d, Matrix m,
                                     std::vector<std::string>* warnings = nullptr);
};

// Exact operator on a finite chain segment. matrix is d^n_sites square.
struct DenseOperator {
    int n_sites = 0;
    int d = 0;
    Matrix matrix;

    long long dim() const { return matrix.rows(); }
};

// Eigendecomposition of a Hermitian operator. eigenvalues ascending,
// eigenvectors are columns (empty when only values were requested).
struct Spectrum {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

}  // namespace gibbsline
