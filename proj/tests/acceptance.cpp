// Acceptance suite: one criterion per invocation (argv[1] = 1..9), printing a
// single pass/fail line and exiting 0/1. Tolerances are pinned here, in code.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "core/chain.hpp"
#include "core/free_energy.hpp"
#include "core/gibbs.hpp"
#include "core/lieb_robinson.hpp"
#include "core/mpo.hpp"
#include "core/qbp.hpp"
#include "core/spectral.hpp"
#include "oracles.hpp"

using namespace gibbsline;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

InteractionTerm free_term(int d) {
    return InteractionTerm::validated(d, Matrix::Zero(d * d, d * d));
}

InteractionTerm ising_term() {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    return InteractionTerm::validated(2, -oracle::kron(z, z));
}

// normalized TFIM bond term -(ZZ + (XI + IX)/2) / nu; nu is reported so the
// free-fermion reference can be evaluated at the rescaled temperature.
InteractionTerm tfim_term(double* nu_out = nullptr) {
    Matrix z(2, 2), x(2, 2);
    z << 1, 0, 0, -1;
    x << 0, 1, 1, 0;
    const Matrix id = Matrix::Identity(2, 2);
    Matrix raw = -(oracle::kron(z, z) + 0.5 * (oracle::kron(x, id) + oracle::kron(id, x)));
    const double nu = operator_norm(raw);
    if (nu_out) *nu_out = nu;
    return InteractionTerm::validated(2, raw / nu);
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

// TFIM delta_l series over l = 2..11 (needs ratios up to l = 12).
std::vector<std::pair<int, double>> tfim_delta_series(const InteractionTerm& tfim) {
    const auto sweep = ratio_convergence_sweep(tfim, 1.0, 12);
    std::vector<std::pair<int, double>> series;
    for (const auto& p : sweep)
        if (p.l >= 2 && p.l <= 11 && p.delta && *p.delta > 0)
            series.emplace_back(p.l, *p.delta);
    return series;
}

Outcome criterion_1() {
    Outcome out;
    const auto t0 = Clock::now();
    for (int d : {2, 3}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const AlgorithmParams p = select_parameters(beta, 1e-6, 1.0, 1.0, 4);
            const FreeEnergyEstimate f =
                estimate_free_energy(free_term(d), beta, p, GibbsBackendSpec{});
            const double err = std::abs(f.f_tilde + std::log(double(d)) / beta);
            out.require(err <= 1e-12, "d=" + std::to_string(d) + " beta=" +
                                          std::to_string(beta) + " err=" +
                                          std::to_string(err));
        }
    }
    const double elapsed = seconds_since(t0);
    out.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + "s >= 1s");
    if (out.pass) out.detail = "free model exact to 1e-12 in " + std::to_string(elapsed) + "s";
    return out;
}

Outcome criterion_2() {
    Outcome out;
    const auto t0 = Clock::now();
    const InteractionTerm h = ising_term();
    for (double beta : {0.5, 1.0, 2.0}) {
        const AlgorithmParams p = select_parameters(beta, 1e-6, 1.0, 1.0, 4);
        const FreeEnergyEstimate f = estimate_free_energy(h, beta, p, GibbsBackendSpec{});
        const double err = std::abs(f.f_tilde + std::log(2 * std::cosh(beta)) / beta);
        out.require(err <= 1e-6,
                    "beta=" + std::to_string(beta) + " err=" + std::to_string(err));
        for (int l = 1; l <= 10; ++l) {
            const double dev = std::abs(exact_ratio(h, l, beta) - 2 * std::cosh(beta));
            out.require(dev <= 1e-12, "ratio l-dependence at beta=" +
                                          std::to_string(beta) + " l=" +
                                          std::to_string(l));
        }
    }
    const double elapsed = seconds_since(t0);
    out.require(elapsed < 10.0, "runtime " + std::to_string(elapsed) + "s >= 10s");
    if (out.pass) out.detail = "closed-form Ising matched; ratio l-independent";
    return out;
}

Outcome criterion_3() {
    Outcome out;
    const auto t0 = Clock::now();
    const auto series = tfim_delta_series(tfim_term());
    out.require(series.size() >= 3, "fewer than 3 positive deltas");
    if (series.size() >= 3) {
        const DecayFit fit = fit_exponential_decay(series);
        char buf[160];
        std::snprintf(buf, sizeof buf, "rate=%.4f r2=%.6f over %zu points", fit.rate,
                      fit.r_squared, series.size());
        out.detail = buf;
        out.require(fit.rate > 0, "nonnegative slope");
        out.require(fit.r_squared >= 0.98,
                    "r2 below 0.98 (deltas fall below the double-precision noise "
                    "floor near l=9)");
    }
    const double elapsed = seconds_since(t0);
    out.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + "s >= 60s");
    return out;
}

Outcome criterion_4() {
    Outcome out;
    const InteractionTerm h = tfim_term();
    for (int n = 2; n <= 8; ++n) {
        const GibbsMpoResult g = mpo_gibbs(h, n, 1.0, 1e-8, GibbsBackendSpec{});
        out.require(g.measured_error <= 1e-8,
                    "n=" + std::to_string(n) + " 1-norm error " +
                        std::to_string(g.measured_error));
        const double dense_trace =
            hermitian_expm(build_hamiltonian(h, n), -1.0).matrix.trace().real();
        const double rel =
            std::abs(mpo_trace(g.mpo).real() - dense_trace) / std::abs(dense_trace);
        out.require(rel <= 1e-8, "n=" + std::to_string(n) + " trace mismatch " +
                                     std::to_string(rel));
    }
    if (out.pass) out.detail = "dense backend certified <= 1e-8 for n = 2..8";
    return out;
}

Outcome criterion_5() {
    Outcome out;
    std::vector<std::pair<std::string, InteractionTerm>> models;
    models.emplace_back("ising", ising_term());
    models.emplace_back("tfim", tfim_term());
    models.emplace_back("random",
                        InteractionTerm::validated(2, oracle::random_hermitian(4, 12345)));
    for (const auto& [name, h] : models) {
        for (int L : {3, 4, 5}) {
            PerturbationSetup setup{h, L, std::nullopt, 1.0};
            const double lhs = verify_ratio_identity(setup, 8).lhs;
            const double diff_fine = verify_ratio_identity(setup, 1000).abs_diff;
            out.require(diff_fine <= 1e-6, name + " L=" + std::to_string(L) +
                                               " abs_diff " + std::to_string(diff_fine));
            // observed convergence order from coarse refinements
            const double e8 = verify_ratio_identity(setup, 8).abs_diff;
            const double e16 = verify_ratio_identity(setup, 16).abs_diff;
            const double e32 = verify_ratio_identity(setup, 32).abs_diff;
            if (e8 > 1e-13 && e16 > 1e-13 && e32 > 1e-14) {
                const double order = 0.5 * (std::log2(e8 / e16) + std::log2(e16 / e32));
                out.require(order >= 3.5, name + " L=" + std::to_string(L) +
                                              " order " + std::to_string(order));
            }
            (void)lhs;
        }
    }
    if (out.pass) out.detail = "identity holds to 1e-6 with observed order >= 3.5";
    return out;
}

Outcome criterion_6() {
    Outcome out;
    PerturbationSetup setup{tfim_term(), 7, std::nullopt, 1.0};
    const int steps = 200;
    const Matrix eta = qbp_eta(setup, steps).eta;
    std::vector<std::pair<int, double>> series;
    double prev = 1e300;
    for (int l = 1; l <= 6; ++l) {
        PerturbationSetup trunc = setup;
        trunc.l = l;
        const double diff = operator_norm(eta - qbp_eta_truncated(trunc, steps).eta);
        out.require(diff <= prev + 1e-9,
                    "increase at l=" + std::to_string(l) + " (" + std::to_string(diff) + ")");
        if (diff > 0) series.emplace_back(l, diff);
        prev = diff;
    }
    out.require(series.size() >= 3, "too few positive norms for a fit");
    if (series.size() >= 3) {
        const DecayFit fit = fit_exponential_decay(series);
        out.require(fit.rate > 0, "log-norm fit slope not negative");
        char buf[96];
        std::snprintf(buf, sizeof buf, "decay rate %.3f per site", fit.rate);
        if (out.pass) out.detail = buf;
    }
    return out;
}

Outcome criterion_7() {
    Outcome out;
    const InteractionTerm h = tfim_term();
    const double a_norm = operator_norm(h.matrix);
    const int L = 7;
    int valid_points = 0;
    for (double t : {0.0, 0.005, 0.01}) {
        for (int l = 1; l <= 6; ++l) {
            const double err = truncation_error(h, L, l, 1.0, t);
            if (t == 0.0)
                out.require(err == 0.0, "t=0 error nonzero at l=" + std::to_string(l));
            for (double decay : {0.5, 1.0}) {
                const LrBound b = lr_bound(a_norm, LrBoundParams::from_beta(1.0, decay), t, l);
                if (!b.valid) continue;
                ++valid_points;
                out.require(err <= b.bound + 1e-12,
                            "violation at t=" + std::to_string(t) + " l=" +
                                std::to_string(l) + " D=" + std::to_string(decay));
            }
        }
    }
    out.require(valid_points > 0, "no valid grid points");
    if (out.pass)
        out.detail = std::to_string(valid_points) + " valid points all dominated";
    return out;
}

Outcome criterion_8() {
    Outcome out;
    std::mt19937 rng(7);
    std::normal_distribution<double> dist(0.0, 1.0);
    auto synthetic = [&](int n) {
        Mpo m;
        m.d = 2;
        const int bond = 6;
        for (int i = 0; i < n; ++i) {
            const int dl = i == 0 ? 1 : bond;
            const int dr = i == n - 1 ? 1 : bond;
            std::vector<Matrix> site(4);
            for (auto& blk : site) {
                blk = Matrix(dl, dr);
                for (int r = 0; r < dl; ++r)
                    for (int c = 0; c < dr; ++c)
                        blk(r, c) = Complex(dist(rng), dist(rng));
            }
            m.sites.push_back(std::move(site));
        }
        return m;
    };
    std::vector<double> per_site;
    for (int n : {8, 16, 32}) {
        std::uint64_t ops = 0;
        mpo_trace(synthetic(n), &ops);
        per_site.push_back(double(ops) / n);
    }
    const double hi = *std::max_element(per_site.begin(), per_site.end());
    const double lo = *std::min_element(per_site.begin(), per_site.end());
    out.require(hi / lo <= 2.0, "per-site op count spread " + std::to_string(hi / lo));
    if (out.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "per-site op spread factor %.3f", hi / lo);
        out.detail = buf;
    }
    return out;
}

Outcome criterion_9() {
    Outcome out;
    double nu = 1.0;
    const InteractionTerm h = tfim_term(&nu);
    const double beta = 1.0, eps = 1e-3;

    // calibrate (xi_hat, a_hat) from the empirical decay fit
    const auto series = tfim_delta_series(h);
    out.require(series.size() >= 3, "calibration sweep failed");
    if (!out.pass) return out;
    const DecayFit fit = fit_exponential_decay(series);
    out.require(fit.rate > 0, "nonpositive calibration rate");
    if (!out.pass) return out;
    const double xi_hat = 1.0 / fit.rate;
    // delta_l ~ amplitude e^{-rate l}; the distance to the limit is the
    // summed tail amplitude/(1 - e^{-rate})
    const double a_hat = fit.amplitude / (1.0 - std::exp(-fit.rate));

    const AlgorithmParams p = select_parameters(beta, eps, xi_hat, a_hat);
    const FreeEnergyEstimate f = estimate_free_energy(h, beta, p, GibbsBackendSpec{});

    // l = 14 reference via the free-fermion solution of the raw (J = 1,
    // g = 1) chain at the rescaled temperature beta/nu; cross-validated
    // against dense ED on every feasible size first.
    for (int n = 2; n <= 8; ++n) {
        const double ff = oracle::tfim_log_z(n, 1.0, 1.0, beta / nu);
        const double ed = log_partition_function(h, n, beta);
        out.require(std::abs(ff - ed) <= 1e-10,
                    "fermion oracle vs ED mismatch at N=" + std::to_string(n));
    }
    const double log_ratio_14 = oracle::tfim_log_z(15, 1.0, 1.0, beta / nu) -
                                oracle::tfim_log_z(14, 1.0, 1.0, beta / nu);
    const double f_ref = -log_ratio_14 / beta;
    const double err = std::abs(f.f_tilde - f_ref);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "xi_hat=%.3f a_hat=%.4f -> l=%d; |f - f_ref| = %.3e (budget %.0e)",
                  xi_hat, a_hat, p.l, err, eps);
    out.detail = buf;
    out.require(err <= eps, "error above budget");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..9>\n");
        return 2;
    }
    const int which = std::atoi(argv[1]);
    Outcome out;
    try {
        switch (which) {
            case 1: out = criterion_1(); break;
            case 2: out = criterion_2(); break;
            case 3: out = criterion_3(); break;
            case 4: out = criterion_4(); break;
            case 5: out = criterion_5(); break;
            case 6: out = criterion_6(); break;
            case 7: out = criterion_7(); break;
            case 8: out = criterion_8(); break;
            case 9: out = criterion_9(); break;
            default:
                std::fprintf(stderr, "usage: acceptance <criterion 1..9>\n");
                return 2;
        }
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d: %s%s%s\n", which, out.pass ? "PASS" : "FAIL",
                out.detail.empty() ? "" : " — ", out.detail.c_str());
    return out.pass ? 0 : 1;
}
