#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "core/models.hpp"
#include "core/runner.hpp"
#include "core/spectral.hpp"
#include "gibbsline/capi.h"
#include "oracles.hpp"

using namespace gibbsline;
using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json strip_timings(json doc) {
    doc.erase("timings");
    if (doc.contains("results")) {
        for (const char* key : {"backend_l", "backend_l1"})
            if (doc["results"].contains(key)) doc["results"][key].erase("wall_seconds");
    }
    return doc;
}

}  // namespace

TEST_CASE("builtin models") {
    const ResolvedModel free_model = builtin_model("free", {{"d", 3}});
    CHECK(free_model.term.d == 3);
    CHECK(free_model.term.matrix.isZero(0.0));

    const ResolvedModel ising = builtin_model("ising", json::object());
    CHECK(operator_norm(ising.term.matrix) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ising.renormalization == 1.0);

    const ResolvedModel tfim = builtin_model("tfim", json::object());
    CHECK(operator_norm(tfim.term.matrix) <= 1.0 + 1e-12);
    CHECK(tfim.renormalization > 1.0);

    const ResolvedModel heis = builtin_model("heisenberg", json::object());
    CHECK(operator_norm(heis.term.matrix) <= 1.0 + 1e-12);

    CHECK_THROWS_AS(builtin_model("nope", json::object()), std::invalid_argument);
    CHECK_THROWS_AS(builtin_model("ising", {{"coupling", 1.5}}), std::invalid_argument);
}

TEST_CASE("parse_model_json") {
    json zero = {{"d", 2}, {"matrix", matrix_to_json(Matrix::Zero(4, 4))}};
    CHECK(parse_model_json(zero).term.matrix.isZero(0.0));

    Matrix diag = Matrix::Zero(4, 4);
    diag.diagonal() << -1, 1, 1, -1;
    json ising = {{"d", 2}, {"matrix", matrix_to_json(diag)}};
    CHECK((parse_model_json(ising).term.matrix - diag).norm() == 0.0);

    // norm violation names the measured norm
    json toobig = {{"d", 2}, {"matrix", matrix_to_json(1.3 * diag)}};
    try {
        parse_model_json(toobig);
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("1.3") != std::string::npos);
    }

    // non-Hermitian beyond tolerance
    Matrix skew = Matrix::Zero(4, 4);
    skew(0, 1) = 0.5;
    json bad = {{"d", 2}, {"matrix", matrix_to_json(skew)}};
    CHECK_THROWS_AS(parse_model_json(bad), std::invalid_argument);

    // near-Hermitian input is symmetrized with a warning
    Matrix nearly = diag;
    nearly(0, 1) = Complex(1e-10, 0.0);
    const ResolvedModel m =
        parse_model_json({{"d", 2}, {"matrix", matrix_to_json(nearly)}});
    CHECK_FALSE(m.warnings.empty());
    CHECK((m.term.matrix - m.term.matrix.adjoint()).norm() < 1e-15);
}

TEST_CASE("C API lifecycle and estimate") {
    CHECK(std::string(gl_version()) == "0.1.0");

    gl_model* model = nullptr;
    REQUIRE(gl_model_builtin("free", nullptr, &model) == GL_OK);
    char* report = nullptr;
    REQUIRE(gl_estimate(model, R"({"beta":1.0,"eps":1e-6,"l_override":3})", &report) ==
            GL_OK);
    const json doc = json::parse(report);
    CHECK(doc.at("schema_version").get<int>() == 1);
    CHECK(doc.at("results").at("f_tilde").get<double>() ==
          doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    gl_string_free(report);
    gl_model_free(model);
}

TEST_CASE("C API error paths") {
    gl_model* model = nullptr;
    CHECK(gl_model_builtin("nope", nullptr, &model) == GL_ERR_INVALID);
    CHECK(model == nullptr);
    CHECK(std::string(gl_last_error()).find("nope") != std::string::npos);

    CHECK(gl_model_from_json("{not json", &model) == GL_ERR_INVALID);
    CHECK(gl_model_from_file("/no/such/file.json", &model) == GL_ERR_INVALID);
    CHECK(gl_set_dim_cap(1) == GL_ERR_INVALID);

    REQUIRE(gl_model_builtin("ising", nullptr, &model) == GL_OK);
    char* report = nullptr;
    CHECK(gl_estimate(model, "[1,2]", &report) == GL_ERR_INVALID);
    CHECK(gl_estimate(model, R"({"backend":"mystery"})", &report) == GL_ERR_INVALID);
    CHECK(gl_estimate(nullptr, nullptr, &report) == GL_ERR_INVALID);
    gl_model_free(model);
}

TEST_CASE("C API model file round trip") {
    Matrix diag = Matrix::Zero(4, 4);
    diag.diagonal() << -1, 1, 1, -1;
    const json doc = {{"d", 2}, {"matrix", matrix_to_json(diag)}};
    const std::string path = "/tmp/gibbsline_model_test.json";
    std::ofstream(path) << doc.dump();

    gl_model* model = nullptr;
    REQUIRE(gl_model_from_file(path.c_str(), &model) == GL_OK);
    char* report = nullptr;
    REQUIRE(gl_oracle(model, R"({"beta":1.0,"N":4})", &report) == GL_OK);
    const json out = json::parse(report);
    // diag(-1,1,1,-1) is the classical Ising bond: ratio 2 cosh 1
    CHECK(out.at("results").at("exact").back().at("ratio_prev").get<double>() ==
          doctest::Approx(2 * std::cosh(1.0)).epsilon(1e-10));
    gl_string_free(report);
    gl_model_free(model);
    std::remove(path.c_str());
}

TEST_CASE("reports are deterministic apart from timings") {
    const ResolvedModel model = builtin_model("tfim", json::object());
    const json opts = {{"beta", 1.0}, {"eps", 1e-4}, {"l_override", 3}};
    const json a = strip_timings(run_estimate(model, opts));
    const json b = strip_timings(run_estimate(model, opts));
    CHECK(a.dump() == b.dump());

    const json s1 = strip_timings(run_sweep(model, {{"beta", 1.0}, {"l_max", 5}}));
    const json s2 = strip_timings(run_sweep(model, {{"beta", 1.0}, {"l_max", 5}}));
    CHECK(s1.dump() == s2.dump());
}

TEST_CASE("verify and sweep reports re-parse with expected fields") {
    const ResolvedModel ising = builtin_model("ising", json::object());
    const json qbp = run_verify_qbp(ising, {{"beta", 1.0}, {"L", 3}, {"steps", 200}});
    CHECK(qbp.at("results").at("ratio_identity").at("abs_diff").get<double>() < 1e-8);
    CHECK(qbp.at("results").at("eta_locality").size() == 2);

    const json lr = run_verify_lr(ising, {{"beta", 1.0}, {"L", 4}});
    CHECK(lr.at("results").at("all_valid_points_dominated").get<bool>());

    const json sweep = run_sweep(ising, {{"beta", 1.0}, {"l_max", 4}});
    CHECK(sweep.at("results").at("points").size() == 4);
}
