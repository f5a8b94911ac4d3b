/* gibbsline C API: free-energy density of 1D translation-invariant quantum
 * spin chains from a local interaction matrix, plus the built-in verification
 * suites. All structured input and output travels as JSON text; models are
 * held behind opaque handles. Every function returns a gl_status; on failure
 * gl_last_error() describes the problem for the calling thread. */
#ifndef GIBBSLINE_CAPI_H
#define GIBBSLINE_CAPI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gl_status {
    GL_OK = 0,
    GL_ERR_INVALID = 2, /* bad input: parse failure, invariant violation, caps */
    GL_ERR_NUMERIC = 3  /* numeric failure, e.g. nonpositive trace estimate */
} gl_status;

typedef struct gl_model gl_model;

const char* gl_version(void);

/* Thread-local message for the most recent failure. */
const char* gl_last_error(void);

/* Overrides the dense-dimension cap d^N (default 2^16). */
gl_status gl_set_dim_cap(long long cap);

/* Builtin models: "free", "ising", "tfim", "heisenberg". params_json may be
 * NULL or a JSON object with model parameters (e.g. {"J":1.0,"g":1.0}). */
gl_status gl_model_builtin(const char* name, const char* params_json, gl_model** out);

/* Model from the JSON model-file format: {"d": int, "matrix": [[ [re,im], ...], ...]}. */
gl_status gl_model_from_json(const char* text, gl_model** out);
gl_status gl_model_from_file(const char* path, gl_model** out);

void gl_model_free(gl_model* model);

/* Run reports. options_json may be NULL or a JSON object; see the report
 * schema in the project README. The returned string must be released with
 * gl_string_free. */
gl_status gl_estimate(const gl_model* model, const char* options_json, char** report);
gl_status gl_sweep(const gl_model* model, const char* options_json, char** report);
gl_status gl_verify_qbp(const gl_model* model, const char* options_json, char** report);
gl_status gl_verify_lr(const gl_model* model, const char* options_json, char** report);
gl_status gl_oracle(const gl_model* model, const char* options_json, char** report);

void gl_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* GIBBSLINE_CAPI_H */
