// gibbsline command-line front end. Links only the shared C API; all results
// travel as JSON reports, optionally flattened to CSV for the sweep command.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gibbsline/capi.h"

using nlohmann::json;

namespace {

struct CommonOpts {
    std::string model = "tfim";
    std::string model_file;
    std::string model_params;  // JSON object forwarded to the builtin factory
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--model", c.model, "builtin model: free|ising|tfim|heisenberg")
        ->capture_default_str();
    cmd->add_option("--model-file", c.model_file, "path to a JSON model file");
    cmd->add_option("--model-params", c.model_params,
                    "JSON object of builtin-model parameters, e.g. '{\"J\":0.8}'");
    cmd->add_option("--out", c.out, "write the report here instead of stdout");
    cmd->add_option("--format", c.format, "json|csv (csv only for sweep)")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

[[noreturn]] void die(gl_status code) {
    std::cerr << "gibbsline: error: " << gl_last_error() << "\n";
    std::exit(static_cast<int>(code));
}

gl_model* make_model(const CommonOpts& c) {
    gl_model* model = nullptr;
    gl_status rc;
    if (!c.model_file.empty())
        rc = gl_model_from_file(c.model_file.c_str(), &model);
    else
        rc = gl_model_builtin(c.model.c_str(),
                              c.model_params.empty() ? nullptr : c.model_params.c_str(),
                              &model);
    if (rc != GL_OK) die(rc);
    return model;
}

std::string sweep_csv(const std::string& report) {
    const json doc = json::parse(report);
    std::ostringstream csv;
    csv.precision(17);
    csv << "l,ratio,delta\n";
    for (const auto& row : doc.at("results").at("points")) {
        csv << row.at("l").get<int>() << "," << row.at("ratio").get<double>() << ",";
        if (row.contains("delta")) csv << row.at("delta").get<double>();
        csv << "\n";
    }
    return csv.str();
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(c.out);
    if (!out) {
        std::cerr << "gibbsline: error: cannot open '" << c.out << "' for writing\n";
        std::exit(2);
    }
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

using RunFn = gl_status (*)(const gl_model*, const char*, char**);

void run_command(const CommonOpts& c, RunFn fn, const json& options, bool csv_ok) {
    if (c.format == "csv" && !csv_ok) {
        std::cerr << "gibbsline: error: --format csv is only supported for sweep\n";
        std::exit(2);
    }
    gl_model* model = make_model(c);
    char* report = nullptr;
    const gl_status rc = fn(model, options.dump().c_str(), &report);
    gl_model_free(model);
    if (rc != GL_OK) die(rc);
    std::string text = c.format == "csv" ? sweep_csv(report) : std::string(report);
    gl_string_free(report);
    emit(c, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free-energy density of 1D translation-invariant quantum spin chains"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gl_version()));

    if (const char* cap = std::getenv("GIBBSLINE_DIM_CAP")) {
        char* end = nullptr;
        const long long value = std::strtoll(cap, &end, 10);
        if (!end || *end != '\0' || gl_set_dim_cap(value) != GL_OK) {
            std::cerr << "gibbsline: error: bad GIBBSLINE_DIM_CAP '" << cap << "'\n";
            return 2;
        }
    }

    double beta = 1.0, eps = 1e-4, xi_hat = 1.0, a_hat = 1.0, svd_tol = -1.0, s = 1.0;
    int l_override = -1, trotter_steps = 32, max_bond = -1, l_max = 8, big_l = -1,
        steps = 200, n_sites = 6;
    std::string backend = "dense";
    std::vector<double> t_grid, d_grid;

    CommonOpts c_est, c_sweep, c_qbp, c_lr, c_oracle;

    auto* est = app.add_subcommand("estimate", "estimate the free-energy density");
    add_common(est, c_est);
    est->add_option("--beta", beta, "inverse temperature")->capture_default_str();
    est->add_option("--eps", eps, "target precision")->capture_default_str();
    est->add_option("--xi-hat", xi_hat, "estimated convergence length")->capture_default_str();
    est->add_option("--a-hat", a_hat, "estimated convergence amplitude")->capture_default_str();
    est->add_option("--l-override", l_override, "force the chain length l");
    est->add_option("--backend", backend, "dense|trotter")
        ->check(CLI::IsMember({"dense", "trotter"}))
        ->capture_default_str();
    est->add_option("--svd-tol", svd_tol, "initial MPO truncation tolerance");
    est->add_option("--max-bond", max_bond, "MPO bond-dimension cap (-1: none)");
    est->add_option("--trotter-steps", trotter_steps, "Trotter step count")
        ->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "ratio-convergence sweep over l");
    add_common(sweep, c_sweep);
    sweep->add_option("--beta", beta, "inverse temperature")->capture_default_str();
    sweep->add_option("--l-max", l_max, "largest l in the sweep")->capture_default_str();

    auto* qbp = app.add_subcommand("verify-qbp", "belief-propagation identity checks");
    add_common(qbp, c_qbp);
    qbp->add_option("--beta", beta, "inverse temperature")->capture_default_str();
    qbp->add_option("--L", big_l, "base chain length (default 4)");
    qbp->add_option("--steps", steps, "ODE integration steps")->capture_default_str();

    auto* lr = app.add_subcommand("verify-lr", "Lieb-Robinson truncation checks");
    add_common(lr, c_lr);
    lr->add_option("--beta", beta, "inverse temperature")->capture_default_str();
    lr->add_option("--L", big_l, "base chain length (default 5)");
    lr->add_option("--s", s, "interpolation parameter")->capture_default_str();
    lr->add_option("--t-grid", t_grid, "evolution times");
    lr->add_option("--D-grid", d_grid, "decay-rate parameters");

    auto* oracle = app.add_subcommand("oracle", "exact small-chain diagnostics");
    add_common(oracle, c_oracle);
    oracle->add_option("--beta", beta, "inverse temperature")->capture_default_str();
    oracle->add_option("--N", n_sites, "largest chain size")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (est->parsed()) {
        json o = {{"beta", beta}, {"eps", eps},           {"xi_hat", xi_hat},
                  {"a_hat", a_hat}, {"backend", backend}, {"trotter_steps", trotter_steps}};
        if (l_override >= 0) o["l_override"] = l_override;
        if (svd_tol >= 0) o["svd_tol"] = svd_tol;
        if (max_bond >= 0) o["max_bond"] = max_bond;
        run_command(c_est, &gl_estimate, o, false);
    } else if (sweep->parsed()) {
        run_command(c_sweep, &gl_sweep, {{"beta", beta}, {"l_max", l_max}}, true);
    } else if (qbp->parsed()) {
        json o = {{"beta", beta}, {"steps", steps}};
        if (big_l >= 0) o["L"] = big_l;
        run_command(c_qbp, &gl_verify_qbp, o, false);
    } else if (lr->parsed()) {
        json o = {{"beta", beta}, {"s", s}};
        if (big_l >= 0) o["L"] = big_l;
        if (!t_grid.empty()) o["t_grid"] = t_grid;
        if (!d_grid.empty()) o["D_grid"] = d_grid;
        run_command(c_lr, &gl_verify_lr, o, false);
    } else if (oracle->parsed()) {
        run_command(c_oracle, &gl_oracle, {{"beta", beta}, {"N", n_sites}}, false);
    }
    return 0;
}
