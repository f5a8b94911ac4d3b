#include "gibbsline/capi.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "../core/models.hpp"
#include "../core/runner.hpp"
#include "../core/types.hpp"

using nlohmann::json;

struct gl_model {
    gibbsline::ResolvedModel resolved;
};

namespace {

thread_local std::string g_last_error;

gl_status fail(gl_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

json parse_options(const char* text) {
    if (!text || !*text) return json::object();
    json doc = json::parse(text);  // throws json::parse_error on bad input
    if (!doc.is_object()) throw std::invalid_argument("options must be a JSON object");
    return doc;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs fn, mapping the exception taxonomy onto status codes.
template <typename Fn>
gl_status guarded(Fn&& fn) {
    try {
        fn();
        return GL_OK;
    } catch (const gibbsline::NumericError& e) {
        return fail(GL_ERR_NUMERIC, e.what());
    } catch (const json::exception& e) {
        return fail(GL_ERR_INVALID, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(GL_ERR_INVALID, e.what());
    } catch (const std::exception& e) {
        return fail(GL_ERR_NUMERIC, e.what());
    }
}

using Runner = json (*)(const gibbsline::ResolvedModel&, const json&);

gl_status run(Runner runner, const gl_model* model, const char* options_json,
              char** report) {
    if (!model || !report) return fail(GL_ERR_INVALID, "null model or report pointer");
    *report = nullptr;
    return guarded([&] {
        const json doc = runner(model->resolved, parse_options(options_json));
        *report = dup_string(doc.dump(2));
    });
}

}  // namespace

extern "C" {

const char* gl_version(void) { return "0.1.0"; }

const char* gl_last_error(void) { return g_last_error.c_str(); }

gl_status gl_set_dim_cap(long long cap) {
    return guarded([&] { gibbsline::set_dim_cap(cap); });
}

gl_status gl_model_builtin(const char* name, const char* params_json, gl_model** out) {
    if (!name || !out) return fail(GL_ERR_INVALID, "null name or out pointer");
    *out = nullptr;
    return guarded([&] {
        auto model = std::make_unique<gl_model>();
        model->resolved = gibbsline::builtin_model(name, parse_options(params_json));
        *out = model.release();
    });
}

gl_status gl_model_from_json(const char* text, gl_model** out) {
    if (!text || !out) return fail(GL_ERR_INVALID, "null text or out pointer");
    *out = nullptr;
    return guarded([&] {
        auto model = std::make_unique<gl_model>();
        model->resolved = gibbsline::parse_model_json(json::parse(text));
        *out = model.release();
    });
}

gl_status gl_model_from_file(const char* path, gl_model** out) {
    if (!path || !out) return fail(GL_ERR_INVALID, "null path or out pointer");
    *out = nullptr;
    return guarded([&] {
        auto model = std::make_unique<gl_model>();
        model->resolved = gibbsline::parse_model_file(path);
        *out = model.release();
    });
}

void gl_model_free(gl_model* model) { delete model; }

gl_status gl_estimate(const gl_model* model, const char* options_json, char** report) {
    return run(&gibbsline::run_estimate, model, options_json, report);
}

gl_status gl_sweep(const gl_model* model, const char* options_json, char** report) {
    return run(&gibbsline::run_sweep, model, options_json, report);
}

gl_status gl_verify_qbp(const gl_model* model, const char* options_json, char** report) {
    return run(&gibbsline::run_verify_qbp, model, options_json, report);
}

gl_status gl_verify_lr(const gl_model* model, const char* options_json, char** report) {
    return run(&gibbsline::run_verify_lr, model, options_json, report);
}

gl_status gl_oracle(const gl_model* model, const char* options_json, char** report) {
    return run(&gibbsline::run_oracle, model, options_json, report);
}

void gl_string_free(char* s) { delete[] s; }

}  // extern "C"
