#pragma once

#include <optional>

#include "gibbs.hpp"
#include "types.hpp"

namespace gibbsline {

// Chain length and MPO error levels for one free-energy run. xi_hat, a_hat
// play the role of the ratio-convergence constants, which the theory leaves
// unspecified; they default to 1 and can be calibrated from a sweep fit.
struct AlgorithmParams {
    int l = 2;
    double eps_mpo_l = 0.0;
    double eps_mpo_l1 = 0.0;
    double xi_hat = 1.0;
    double a_hat = 1.0;
    std::vector<std::string> warnings;
};

AlgorithmParams select_parameters(double beta, double eps, double xi_hat = 1.0,
                                  double a_hat = 1.0,
                                  std::optional<int> l_override = std::nullopt);

struct FreeEnergyEstimate {
    double f_tilde = 0.0;
    double ratio = 0.0;  // Z~_{l+1} / Z~_l
    double log_z_l = 0.0;
    double log_z_l1 = 0.0;
    AlgorithmParams params;
    GibbsMpoResult report_l;
    GibbsMpoResult report_l1;
};

// Two Gibbs-MPO constructions at sizes l and l+1, log-domain traces, and
// f~ = -(1/beta) log(Z~_{l+1}/Z~_l).
FreeEnergyEstimate estimate_free_energy(const InteractionTerm& h, double beta,
                                        const AlgorithmParams& params,
                                        const GibbsBackendSpec& backend);

struct SweepPoint {
    int l = 0;
    double ratio = 0.0;
    std::optional<double> delta;  // |ratio_{l+1} - ratio_l|; absent at l_max
};

// Exact-diagonalization ratios Z_{l+1}/Z_l for l = 1..l_max with Cauchy
// increments, the empirical form of the ratio-convergence statement.
std::vector<SweepPoint> ratio_convergence_sweep(const InteractionTerm& h, double beta,
                                                int l_max);

struct DecayFit {
    double rate = 0.0;       // value ~ amplitude * e^{-rate * l}
    double amplitude = 0.0;
    double r_squared = 0.0;
};

// Least-squares line through (l, log value). Requires >= 3 strictly positive
// points. A constant series fits exactly (rate 0, r^2 = 1).
DecayFit fit_exponential_decay(const std::vector<std::pair<int, double>>& series);

}  // namespace gibbsline
