#include "free_energy.hpp"

#include <cmath>
#include <future>

#include "chain.hpp"

namespace gibbsline {

AlgorithmParams select_parameters(double beta, double eps, double xi_hat, double a_hat,
                                  std::optional<int> l_override) {
    if (beta <= 0) throw std::invalid_argument("select_parameters: beta must be > 0");
    if (eps <= 0 || eps >= 1)
        throw std::invalid_argument("select_parameters: eps must be in (0,1)");
    if (xi_hat <= 0 || a_hat <= 0)
        throw std::invalid_argument("select_parameters: xi_hat, a_hat must be > 0");
    AlgorithmParams p;
    p.xi_hat = xi_hat;
    p.a_hat = a_hat;
    if (l_override)
        p.l = std::max(2, *l_override);
    else
        p.l = std::max(2, static_cast<int>(std::ceil(
                              xi_hat * std::log(2.0 * std::exp(beta) * a_hat / (beta * eps)))));
    const double level = eps * beta * std::exp(-beta * (2 * p.l + 1));
    p.eps_mpo_l = level / 12.0;
    p.eps_mpo_l1 = level / 8.0;
    if (!(eps < beta / 2))
        p.warnings.push_back("eps >= beta/2: the ratio error budget is only guaranteed "
                             "for eps < beta/2");
    return p;
}

FreeEnergyEstimate estimate_free_energy(const InteractionTerm& h, double beta,
                                        const AlgorithmParams& params,
                                        const GibbsBackendSpec& backend) {
    if (beta <= 0) throw std::invalid_argument("estimate_free_energy: beta must be > 0");
    if (params.l < 2) throw std::invalid_argument("estimate_free_energy: l must be >= 2");
    auto run = [&](int n, double eps) {
        GibbsMpoResult g = mpo_gibbs(h, n, beta, eps, backend);
        const double log_z = mpo_log_trace(g.mpo);
        return std::pair<GibbsMpoResult, double>(std::move(g), log_z);
    };
    auto fut = std::async(std::launch::async, run, params.l, params.eps_mpo_l);
    auto [rep1, log_z1] = run(params.l + 1, params.eps_mpo_l1);
    auto [rep0, log_z0] = fut.get();

    FreeEnergyEstimate est;
    est.log_z_l = log_z0;
    est.log_z_l1 = log_z1;
    est.ratio = std::exp(log_z1 - log_z0);
    est.f_tilde = -(log_z1 - log_z0) / beta;
    est.params = params;
    est.report_l = std::move(rep0);
    est.report_l1 = std::move(rep1);
    // Sanity envelope from |log(Z_{l+1}/Z_l)| <= log d + beta ||h||.
    if (std::abs(beta * est.f_tilde) > beta + std::log(h.d) + 1e-6)
        throw NumericError("free-energy estimate violates the ratio bound envelope");
    return est;
}

std::vector<SweepPoint> ratio_convergence_sweep(const InteractionTerm& h, double beta,
                                                int l_max) {
    if (l_max < 1) throw std::invalid_argument("ratio_convergence_sweep: l_max must be >= 1");
    checked_dim(h.d, l_max + 1);
    std::vector<double> log_z(l_max + 2);
    for (int n = 1; n <= l_max + 1; ++n)
        log_z[n] = log_partition_function(h, n, beta);
    std::vector<SweepPoint> out;
    out.reserve(l_max);
    for (int l = 1; l <= l_max; ++l) {
        SweepPoint p;
        p.l = l;
        p.ratio = std::exp(log_z[l + 1] - log_z[l]);
        out.push_back(p);
    }
    for (int i = 0; i + 1 < static_cast<int>(out.size()); ++i)
        out[i].delta = std::abs(out[i + 1].ratio - out[i].ratio);
    return out;
}

DecayFit fit_exponential_decay(const std::vector<std::pair<int, double>>& series) {
    if (series.size() < 3)
        throw std::invalid_argument("fit_exponential_decay: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(series.size());
    for (const auto& [l, value] : series) {
        if (!(value > 0))
            throw std::invalid_argument("fit_exponential_decay: values must be positive");
        const double y = std::log(value);
        sx += l;
        sy += y;
        sxx += static_cast<double>(l) * l;
        sxy += l * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("fit_exponential_decay: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (const auto& [l, value] : series) {
        const double y = std::log(value);
        ss_res += (y - slope * l - intercept) * (y - slope * l - intercept);
        ss_tot += (y - mean) * (y - mean);
    }
    DecayFit fit;
    fit.rate = -slope;
    fit.amplitude = std::exp(intercept);
    fit.r_squared = ss_tot < 1e-30 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

}  // namespace gibbsline
