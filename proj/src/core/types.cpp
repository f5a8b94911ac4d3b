#include "types.hpp"

#include "spectral.hpp"

namespace gibbsline {
namespace {
std::atomic<long long> g_dim_cap{1LL << 16};
}

long long dim_cap() { return g_dim_cap.load(); }

void set_dim_cap(long long cap) {
    if (cap < 4) throw std::invalid_argument("dimension cap must be at least 4");
    g_dim_cap.store(cap);
}

long long checked_dim(int d, int n_sites) {
    if (d < 2) throw std::invalid_argument("local dimension must be at least 2");
    if (n_sites < 0) throw std::invalid_argument("negative site count");
    const long long cap = dim_cap();
    long long dim = 1;
    for (int i = 0; i < n_sites; ++i) {
        dim *= d;
        if (dim > cap)
            throw DimensionCapError("d^N = " + std::to_string(d) + "^" +
                                    std::to_string(n_sites) + " exceeds the dimension cap " +
                                    std::to_string(cap));
    }
    return dim;
}

InteractionTerm InteractionTerm::validated(int d, Matrix m,
                                           std::vector<std::string>* warnings) {
    if (d < 2) throw std::invalid_argument("interaction term: d must be >= 2");
    if (m.rows() != d * d || m.cols() != d * d)
        throw std::invalid_argument("interaction term: matrix must be d^2 x d^2");
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-9)
        throw std::invalid_argument("interaction term: not Hermitian (entrywise defect " +
                                    std::to_string(defect) + ")");
    if (defect > 1e-12) {
        m = (m + m.adjoint()).eval() / 2.0;
        if (warnings)
            warnings->push_back("interaction term symmetrized; Hermiticity defect was " +
                                std::to_string(defect));
    }
    const double norm = operator_norm(m);
    if (norm > 1.0 + 1e-9)
        throw std::invalid_argument("interaction term: spectral norm " +
                                    std::to_string(norm) + " exceeds 1");
    return InteractionTerm{d, std::move(m)};
}

}  // namespace gibbsline
